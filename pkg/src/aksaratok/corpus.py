"""Loading parallel corpora and word lists."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import EncodingError, MissingColumn, RowCountMismatch, UnknownLanguage

SPLITS = ("train", "valid", "test")
_EDGE_PUNCT = re.compile(r"^[\W_]+|[\W_]+$")


@dataclass
class ParallelCorpus:
    languages: list
    samples: list
    ids: list = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.languages)) != len(self.languages):
            raise ValueError(f"duplicate language codes in {self.languages}")
        for n, row in enumerate(self.samples):
            missing = [lang for lang in self.languages if lang not in row]
            if missing:
                raise MissingColumn(f"sample {n} has no entry for {missing}")

    def __len__(self):
        return len(self.samples)

    def texts(self, language: str) -> list:
        if language not in self.languages:
            raise UnknownLanguage(f"language {language!r} not in corpus {self.languages}")
        return [row[language] for row in self.samples]


def _read_text(path: Path) -> str:
    try:
        return path.read_bytes().decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"{path}: not valid UTF-8 ({exc.reason} at byte {exc.start})") from None


def _delimiter(path: Path, sample: str) -> str:
    if path.suffix.lower() in (".tsv", ".tab"):
        return "\t"
    if path.suffix.lower() == ".csv":
        return ","
    return "\t" if sample.count("\t") >= sample.count(",") else ","


def _read_table(path: Path) -> tuple[list, list]:
    text = _read_text(path)
    header_line = text.split("\n", 1)[0]
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=_delimiter(path, header_line))
    rows = list(reader)
    if not rows:
        raise MissingColumn(f"{path}: empty file, expected a header row")
    header = [h.strip() for h in rows[0]]
    body = []
    for lineno, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) != len(header):
            raise MissingColumn(f"{path}: record {lineno} has {len(row)} fields, header has {len(header)}")
        body.append(row)
    return header, body


def _load_table(path: Path, languages, id_column) -> ParallelCorpus:
    header, body = _read_table(path)
    if id_column is not None and id_column not in header:
        raise MissingColumn(f"{path}: no id column {id_column!r} in header {header}")
    langs = list(languages) if languages else [h for h in header if h != id_column]
    for lang in langs:
        if lang not in header:
            raise MissingColumn(f"{path}: no column for language {lang!r}")
    pos = {h: i for i, h in enumerate(header)}
    samples = [{lang: row[pos[lang]] for lang in langs} for row in body]
    ids = [row[pos[id_column]] for row in body] if id_column else []
    return ParallelCorpus(langs, samples, ids)


def _language_files(directory: Path) -> dict:
    """Map language code to its file(s): ``<lang>.csv`` or ``<lang>/{train,valid,test}.csv``."""
    found = {}
    for p in sorted(directory.iterdir()):
        if p.is_file() and p.suffix.lower() in (".csv", ".tsv"):
            found[p.stem] = [p]
        elif p.is_dir():
            parts = [p / f"{s}{ext}" for s in SPLITS for ext in (".csv", ".tsv") if (p / f"{s}{ext}").exists()]
            if parts:
                found[p.name] = parts
    return found


def _load_directory(directory: Path, languages, text_column, id_column) -> ParallelCorpus:
    files = _language_files(directory)
    langs = list(languages) if languages else sorted(files)
    if not langs:
        raise MissingColumn(f"{directory}: no per-language CSV/TSV files found")
    columns = {}
    keys = {}
    for lang in langs:
        if lang not in files:
            raise MissingColumn(f"{directory}: no file for language {lang!r}")
        texts, ids = [], []
        for path in files[lang]:
            header, body = _read_table(path)
            if text_column not in header:
                raise MissingColumn(f"{path}: no {text_column!r} column in header {header}")
            t = header.index(text_column)
            i = header.index(id_column) if id_column in header else None
            texts += [row[t] for row in body]
            if i is not None:
                # split files restart their ids, so qualify them
                prefix = f"{path.stem}:" if len(files[lang]) > 1 else ""
                ids += [prefix + row[i] for row in body]
        columns[lang] = texts
        keys[lang] = ids if len(ids) == len(texts) else None
    counts = {lang: len(v) for lang, v in columns.items()}
    if len(set(counts.values())) > 1:
        raise RowCountMismatch(f"per-language row counts differ: {counts}")

    if all(keys[lang] is not None for lang in langs):
        order = keys[langs[0]]
        lookups = {}
        for lang in langs:
            lookups[lang] = dict(zip(keys[lang], columns[lang]))
            if len(lookups[lang]) != len(keys[lang]):
                raise RowCountMismatch(f"{lang}: duplicate ids")
            if set(keys[lang]) != set(order):
                raise RowCountMismatch(f"{lang}: ids do not match those of {langs[0]}")
        samples = [{lang: lookups[lang][k] for lang in langs} for k in order]
        return ParallelCorpus(langs, samples, list(order))
    n = counts[langs[0]]
    samples = [{lang: columns[lang][r] for lang in langs} for r in range(n)]
    return ParallelCorpus(langs, samples)


def load_parallel(path, languages: Iterable[str] | None = None, id_column: str | None = None,
                  text_column: str = "text") -> ParallelCorpus:
    """Load a parallel corpus.

    ``path`` is either one CSV/TSV whose header names the languages, or a
    directory with one file per language (``<lang>.csv``, or NusaX-style
    ``<lang>/train.csv``, ``valid.csv``, ``test.csv`` concatenated in that order),
    each with a ``text_column``. Per-language files are joined on their ``id``
    column when every file has one, otherwise on row position.

    In the single-file form no column is treated as an id unless ``id_column`` is
    given, since ``id`` is also the code for Indonesian.
    """
    path = Path(path)
    if path.is_dir():
        return _load_directory(path, languages, text_column, id_column or "id")
    if not path.exists():
        raise FileNotFoundError(f"{path}: no such file or directory")
    return _load_table(path, languages, id_column)


def save_parallel(corpus: ParallelCorpus, path, id_column: str | None = None):
    """Write a single TSV that :func:`load_parallel` reads back unchanged."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        plain = csv.writer(f, delimiter="\t", lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        # with a "\n" terminator csv leaves a bare "\r" unquoted, which readers take as a line break
        quoted = csv.writer(f, delimiter="\t", lineterminator="\n", quoting=csv.QUOTE_ALL)

        def write(row):
            (quoted if any("\r" in c for c in row) else plain).writerow(row)

        if id_column:
            write([id_column] + corpus.languages)
            ids = corpus.ids or [str(i) for i in range(len(corpus.samples))]
            for k, row in zip(ids, corpus.samples):
                write([k] + [row[lang] for lang in corpus.languages])
        else:
            write(corpus.languages)
            for row in corpus.samples:
                write([row[lang] for lang in corpus.languages])


def _normalize_word(word: str) -> str:
    return _EDGE_PUNCT.sub("", word.lower())


def unique_words(corpus: ParallelCorpus, language: str) -> int:
    """Distinct lowercased, whitespace-delimited words with edge punctuation stripped."""
    words = set()
    for text in corpus.texts(language):
        for w in text.split():
            w = _normalize_word(w)
            if w:
                words.add(w)
    return len(words)


def read_wordlist(path, lowercase: bool = True) -> list:
    """One word per line; blank lines and ``#`` comments are ignored."""
    words = []
    for line in _read_text(Path(path)).splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.append(line.lower() if lowercase else line)
    return words


def read_lines(path) -> list:
    """Lines split on ``\\n`` only, so other Unicode line breaks stay inside a line."""
    lines = _read_text(Path(path)).split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]
