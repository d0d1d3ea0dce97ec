"""Command-line interface.

Subcommands: ``train-vocab``, ``tokenize``, ``tpc``, ``align``, ``compare`` and
``segment``. Every run writes a manifest (``<out>.manifest.json``, or stderr when
writing to stdout) with input digests and config/vocab hashes.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import math
import os
import statistics
import sys
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__
from .baseline_bpe import load_bpe
from .corpus import load_parallel, read_lines, read_wordlist
from .errors import AksaraTokError, TargetTooSmall
from .metrics import AlignmentParams, _sig, compare_reports, load_report, pair_report, tpc
from .segmentation import load_phonology, segment
from .tokenizer import SyllableTokenizer, encode_lines
from .vocab import (
    ASCII_BASE_SYMBOLS,
    build_vocabulary,
    census,
    fit_power_law,
    load_vocabulary,
    write_vocabulary,
)

log = logging.getLogger("aksaratok")

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3
DEFAULT_TARGET_SIZE = 2843


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def demo_wordlist_path() -> Path:
    return Path(str(resources.files("aksaratok.data").joinpath("wordlist_id_demo.txt")))


def _sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _digests(paths) -> dict:
    out = {}
    for p in paths:
        p = Path(p)
        if p.is_dir():
            for child in sorted(p.rglob("*")):
                if child.is_file():
                    out[str(child)] = _sha256_file(child)
        else:
            out[str(p)] = _sha256_file(p)
    return out


def _timestamp() -> str:
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    now = datetime.fromtimestamp(int(epoch), timezone.utc) if epoch else datetime.now(timezone.utc)
    return now.replace(microsecond=0).isoformat()


def _write_output(text: str, out):
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=False) + "\n"


def _emit_manifest(args, inputs, out, **hashes):
    manifest = {
        "command": args.command,
        "arguments": {k: _jsonable(v) for k, v in sorted(vars(args).items()) if k not in ("func", "command")},
        "inputs": _digests(p for p in inputs if p is not None),
        "tool_version": __version__,
        "timestamp": _timestamp(),
    }
    manifest.update({k: v for k, v in hashes.items() if v is not None})
    text = _dump_json(manifest)
    if out is None:
        sys.stderr.write(text)
    else:
        Path(str(out) + ".manifest.json").write_text(text, encoding="utf-8")


def _jsonable(v):
    if isinstance(v, Path):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# -- tokenizer selection shared by tokenize / tpc / align --------------------

class _Scheme:
    def __init__(self, name, tokenize, normalize, inputs, config_hash=None, vocab_hash=None):
        self.name = name
        self.tokenize = tokenize
        self.normalize = normalize
        self.inputs = inputs
        self.config_hash = config_hash
        self.vocab_hash = vocab_hash


def _scheme_from_args(args, parser) -> _Scheme:
    if args.scheme == "bpe":
        if not (args.bpe_vocab and args.bpe_merges):
            parser.error("--scheme bpe needs --bpe-vocab and --bpe-merges")
        model = load_bpe(args.bpe_vocab, args.bpe_merges)
        model_hash = hashlib.sha256(
            (_sha256_file(args.bpe_vocab) + _sha256_file(args.bpe_merges)).encode()
        ).hexdigest()
        return _Scheme("bpe", model.encode, lambda t: t, [args.bpe_vocab, args.bpe_merges], vocab_hash=model_hash)
    if not args.vocab:
        parser.error("--scheme syllable needs --vocab")
    cfg = load_phonology(args.phonology)
    vocab = load_vocabulary(args.vocab)
    tok = SyllableTokenizer(vocab, cfg, lowercase=not args.keep_case)
    return _Scheme("syllable", tok.encode, tok.normalize, [args.vocab, args.phonology],
                   config_hash=cfg.config_hash(), vocab_hash=vocab.vocab_hash())


def _add_scheme_args(p):
    p.add_argument("--scheme", choices=("syllable", "bpe"), default="syllable")
    p.add_argument("--vocab", type=Path, help="syllable vocabulary file (train-vocab output)")
    p.add_argument("--phonology", type=Path, help="phonology config file (default: built-in)")
    p.add_argument("--keep-case", action="store_true", help="do not lowercase before syllable tokenization")
    p.add_argument("--bpe-vocab", type=Path, help="GPT-2 format vocab.json")
    p.add_argument("--bpe-merges", type=Path, help="GPT-2 format merges.txt")


def _add_corpus_args(p):
    p.add_argument("corpus", type=Path, help="CSV/TSV file or directory of per-language files")
    p.add_argument("--languages", help="comma-separated subset of language codes, in output order")
    p.add_argument("--id-column", help="column holding sample ids (single-file corpora)")
    p.add_argument("--text-column", default="text", help="text column in per-language files")


def _load_corpus(args):
    langs = args.languages.split(",") if args.languages else None
    return load_parallel(args.corpus, languages=langs, id_column=args.id_column, text_column=args.text_column)


# -- commands -----------------------------------------------------------------

def cmd_train_vocab(args, parser):
    if args.target_size <= 0:
        raise TargetTooSmall(f"target size must be positive, got {args.target_size}")
    wordlist_path = args.wordlist or demo_wordlist_path()
    cfg = load_phonology(args.phonology)
    words = read_wordlist(wordlist_path)
    cen = census(words, cfg)
    extra = "" if args.no_ascii_base else ASCII_BASE_SYMBOLS
    vocab = build_vocabulary(cen, words, args.target_size, cfg, extra_symbols=extra)
    try:
        fit = fit_power_law(cen)
        power_law = {"alpha": _sig(fit.alpha), "beta": _sig(fit.beta), "x_min": fit.x_min, "n_tail": fit.n_tail}
    except AksaraTokError as exc:
        log.warning("power-law fit skipped: %s", exc)
        power_law = {"error": str(exc)}
    meta = {
        "target_size": args.target_size,
        "config_hash": cfg.config_hash(),
        "wordlist_sha256": _sha256_file(wordlist_path),
        "words": len(words),
        "words_skipped": cen.skipped,
        "distinct_syllables": len(cen),
        "syllable_total": cen.total,
        "power_law": power_law,
        "counts": dict(sorted(cen.counts.items(), key=lambda kv: (-kv[1], kv[0]))),
    }
    write_vocabulary(vocab, args.out, meta)
    _emit_manifest(args, [wordlist_path, args.phonology], args.out,
                   config_hash=cfg.config_hash(), vocab_hash=vocab.vocab_hash())
    print(f"wrote {len(vocab)} tokens (incl. UNK) to {args.out}", file=sys.stderr)


def cmd_tokenize(args, parser):
    scheme = _scheme_from_args(args, parser)
    lines = read_lines(args.input)
    text = "".join(line + "\n" for line in encode_lines(lines, scheme.tokenize))
    _write_output(text, args.out)
    _emit_manifest(args, [args.input, *scheme.inputs], args.out,
                   config_hash=scheme.config_hash, vocab_hash=scheme.vocab_hash)


def _distribution(values, bins):
    edges = np.linspace(0.0, 1.0, bins + 1)
    arr = np.asarray(values, dtype=float)
    counts, _ = np.histogram(arr[arr <= 1.0], bins=edges)
    return {
        "n": len(values),
        "mean": _sig(statistics.fmean(values)) if values else None,
        "median": _sig(statistics.median(values)) if values else None,
        "std": _sig(statistics.pstdev(values)) if values else None,
        "min": _sig(min(values)) if values else None,
        "max": _sig(max(values)) if values else None,
        "histogram": {
            "edges": [_sig(float(e)) for e in edges],
            "counts": [int(c) for c in counts],
            "overflow": int((arr > 1.0).sum()),
        },
    }


def cmd_tpc(args, parser):
    scheme = _scheme_from_args(args, parser)
    corpus = _load_corpus(args)
    report = {"scheme": scheme.name, "sample_count": len(corpus), "languages": {}}
    for lang in corpus.languages:
        values = []
        for text in corpus.texts(lang):
            n = len(scheme.normalize(text))
            if n:
                values.append(tpc(scheme.tokenize(text), n))
        dist = _distribution(values, args.bins)
        dist["values"] = [_sig(v) for v in values]
        report["languages"][lang] = dist

    if args.format == "json":
        text = _dump_json(report)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["language", "n", "mean", "median", "bin_lo", "bin_hi", "count"])
        for lang, d in report["languages"].items():
            h = d["histogram"]
            rows = [(lo, hi, c) for lo, hi, c in zip(h["edges"], h["edges"][1:], h["counts"])]
            rows.append((1.0, math.inf, h["overflow"]))
            for lo, hi, c in rows:
                w.writerow([lang, d["n"], _fmt(d["mean"]), _fmt(d["median"]), _fmt(lo), _fmt(hi), c])
        text = buf.getvalue()
    _write_output(text, args.out)
    _emit_manifest(args, [args.corpus, *scheme.inputs], args.out,
                   config_hash=scheme.config_hash, vocab_hash=scheme.vocab_hash)


def _fmt(x):
    return "" if x is None else f"{x:.9g}"


def cmd_align(args, parser):
    scheme = _scheme_from_args(args, parser)
    corpus = _load_corpus(args)
    params = AlignmentParams(args.match, args.mismatch, args.gap)
    report = pair_report(corpus, scheme.tokenize, params, scheme=scheme.name)
    if args.format == "json":
        data = report.to_dict()
        data["params"] = {"match": params.match_score, "mismatch": params.mismatch_score, "gap": params.gap_penalty_per_step}
        text = _dump_json(data)
    else:
        text = report.to_csv()
    _write_output(text, args.out)
    _emit_manifest(args, [args.corpus, *scheme.inputs], args.out,
                   config_hash=scheme.config_hash, vocab_hash=scheme.vocab_hash)


def cmd_compare(args, parser):
    first = load_report(args.report_a)
    second = load_report(args.report_b)
    cmp = compare_reports(first, second)
    if args.format == "json":
        data = cmp.to_dict(first, second)
        data["schemes"] = [first.scheme, second.scheme]
        data["languages"] = first.languages
        data["diff_matrix"] = [[None if v is None else _sig(v) for v in row] for row in cmp.diff_matrix(first.languages)]
        text = _dump_json(data)
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lang_a", "lang_b", "a", "b", "diff"])
        for a, b in cmp.pairs:
            w.writerow([a, b, _fmt(first[(a, b)]), _fmt(second[(a, b)]), _fmt(cmp.differences[(a, b)])])
        text = buf.getvalue()
    _write_output(text, args.out)
    _emit_manifest(args, [args.report_a, args.report_b], args.out)


def cmd_segment(args, parser):
    cfg = load_phonology(args.phonology)
    out = []
    for word in args.words:
        out.append(word + "\t" + " ".join(s.surface for s in segment(word.lower(), cfg)))
    _write_output("".join(line + "\n" for line in out), args.out)
    _emit_manifest(args, [args.phonology], args.out, config_hash=cfg.config_hash())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="aksaratok", description="Syllable tokenizer training, tokenization and cross-lingual similarity.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("train-vocab", help="build a syllable vocabulary from a word list")
    p.add_argument("wordlist", nargs="?", type=Path, help="one word per line (default: bundled Indonesian demo list)")
    p.add_argument("--phonology", type=Path)
    p.add_argument("--target-size", type=int, default=DEFAULT_TARGET_SIZE)
    p.add_argument("--no-ascii-base", action="store_true", help="only use word-list characters as base symbols")
    p.add_argument("--out", type=Path, required=True, help="vocabulary file; metadata goes to <out>.meta.json")
    p.set_defaults(func=cmd_train_vocab)

    p = sub.add_parser("tokenize", help="tokenize lines of text into JSON lines")
    p.add_argument("input", type=Path)
    _add_scheme_args(p)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("tpc", help="tokens-per-character distribution per language")
    _add_corpus_args(p)
    _add_scheme_args(p)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_tpc)

    p = sub.add_parser("align", help="mean Smith-Waterman similarity per language pair")
    _add_corpus_args(p)
    _add_scheme_args(p)
    p.add_argument("--match", type=int, default=2)
    p.add_argument("--mismatch", type=int, default=-1)
    p.add_argument("--gap", type=int, default=1, help="penalty per gap step (non-negative)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("compare", help="regress one similarity report on another")
    p.add_argument("report_a", type=Path, help="JSON report from align (e.g. syllable)")
    p.add_argument("report_b", type=Path, help="JSON report from align (e.g. bpe)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("segment", help="print the syllables of each word")
    p.add_argument("words", nargs="+")
    p.add_argument("--phonology", type=Path)
    p.add_argument("--out", type=Path)
    p.set_defaults(func=cmd_segment)
    return parser


def main(argv=None) -> int:
    try:
        return _run(argv)
    except SystemExit as exc:
        # argparse usage errors and --help/--version; report the code instead of exiting
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


def _run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    if args.command == "align" and (args.match <= 0 or args.gap < 0):
        parser.error("--match must be positive and --gap non-negative")
    if args.command == "tpc" and args.bins <= 0:
        parser.error("--bins must be positive")
    try:
        args.func(args, parser)
    except (AksaraTokError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"aksaratok: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception:
        log.exception("internal error")
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
