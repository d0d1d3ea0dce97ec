"""Syllable tokenizer: segmentation followed by vocabulary lookup with character fallback."""

from __future__ import annotations

import json
import operator
import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import InvalidTokenId
from .segmentation import PhonologyConfig, segment
from .vocab import UNK_ID, Vocabulary


@dataclass
class TokenSequence:
    ids: list = field(default_factory=list)
    surface: list = field(default_factory=list)

    def __len__(self):
        return len(self.ids)

    def to_json(self) -> str:
        return json.dumps({"ids": self.ids, "surface": self.surface}, ensure_ascii=False)


def normalize(text: str, lowercase: bool = True) -> str:
    """NFC-compose (so a decomposed "e" + accent matches a precomposed entry), then lowercase."""
    text = unicodedata.normalize("NFC", text)
    return text.lower() if lowercase else text


def _runs(text: str, cfg: PhonologyConfig) -> Iterator[tuple[bool, str]]:
    """Split into maximal runs of letters; every other character is its own run."""
    start = None
    for i, ch in enumerate(text):
        if cfg.is_letter(ch):
            if start is None:
                start = i
            continue
        if start is not None:
            yield True, text[start:i]
            start = None
        yield False, ch
    if start is not None:
        yield True, text[start:]


class SyllableTokenizer:
    """Bundles a vocabulary and phonology so callers can just ``encode(text)``."""

    def __init__(self, vocab: Vocabulary, cfg: PhonologyConfig | None = None, lowercase: bool = True):
        self.vocab = vocab
        self.cfg = cfg or PhonologyConfig.default()
        self.lowercase = lowercase

    def normalize(self, text: str) -> str:
        return normalize(text, self.lowercase)

    def encode(self, text: str) -> TokenSequence:
        return encode(text, self.vocab, self.cfg, lowercase=self.lowercase)

    def decode(self, seq) -> str:
        return decode(seq, self.vocab)

    def __call__(self, text: str) -> TokenSequence:
        return self.encode(text)


def encode(text: str, vocab: Vocabulary, cfg: PhonologyConfig | None = None, lowercase: bool = True) -> TokenSequence:
    """Tokenize ``text``.

    Letter runs are segmented into syllables. A syllable found in the vocabulary
    becomes one token; otherwise each of its characters becomes a token. Any other
    character (space, digit, punctuation) is a token of its own. Characters missing
    from the vocabulary get the UNK id but keep their text in ``surface``, so the
    surface strings always concatenate back to the normalized input.
    """
    cfg = cfg or PhonologyConfig.default()
    index = vocab.index
    ids: list[int] = []
    surface: list[str] = []

    def emit_chars(chars):
        for ch in chars:
            ids.append(index.get(ch, UNK_ID))
            surface.append(ch)

    for is_word, run in _runs(normalize(text, lowercase), cfg):
        if not is_word:
            emit_chars(run)
            continue
        for seg in segment(run, cfg):
            tok = seg.surface
            tid = index.get(tok)
            if tid is None or tid == UNK_ID:
                emit_chars(tok)
            else:
                ids.append(tid)
                surface.append(tok)
    return TokenSequence(ids, surface)


def decode(seq, vocab: Vocabulary) -> str:
    ids = seq.ids if hasattr(seq, "ids") else seq
    n = len(vocab)
    out = []
    for i in ids:
        try:
            k = operator.index(i)
        except TypeError:
            raise InvalidTokenId(f"token id {i!r} is not an integer") from None
        if not 0 <= k < n:
            raise InvalidTokenId(f"token id {k} outside vocabulary of size {n}")
        out.append(vocab.tokens[k])
    return "".join(out)


def encode_lines(lines: Iterable[str], tokenize) -> Iterator[str]:
    """JSON-lines batch mode: one ``{"ids": [...], "surface": [...]}`` object per input line."""
    for line in lines:
        yield tokenize(line.rstrip("\r\n")).to_json()
