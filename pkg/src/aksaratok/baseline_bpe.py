"""Byte-level BPE encoder that reads GPT-2 style ``vocab.json`` / ``merges.txt`` files.

Used only as the comparison baseline; there is no training code here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import regex

from .errors import InconsistentModel, MalformedMerges, MalformedVocab
from .tokenizer import TokenSequence

GPT2_PATTERN = regex.compile(
    r"""'s|'t|'re|'ve|'m|'ll|'d| ?\p{L}+| ?\p{N}+| ?[^\s\p{L}\p{N}]+|\s+(?!\S)|\s+"""
)


@lru_cache(maxsize=None)
def bytes_to_unicode() -> dict:
    """The GPT-2 byte -> printable character table.

    Printable Latin-1 bytes map to themselves; the remaining 68 bytes are shifted
    to code points 256 and up so no token contains whitespace or control chars.
    """
    keep = (
        list(range(ord("!"), ord("~") + 1))
        + list(range(ord("¡"), ord("¬") + 1))
        + list(range(ord("®"), ord("ÿ") + 1))
    )
    table = {b: chr(b) for b in keep}
    shift = 0
    for b in range(256):
        if b not in table:
            table[b] = chr(256 + shift)
            shift += 1
    return table


@dataclass
class BpeModel:
    vocab: dict
    merges: list
    byte_map: dict = field(default_factory=bytes_to_unicode)
    ranks: dict = field(init=False, repr=False)
    decoder: dict = field(init=False, repr=False)
    _cache: dict = field(init=False, repr=False, default_factory=dict)

    def __post_init__(self):
        self.ranks = {pair: i for i, pair in enumerate(self.merges)}
        self.decoder = {v: k for k, v in self.vocab.items()}
        self.byte_decoder = {c: b for b, c in self.byte_map.items()}

    def __len__(self):
        return len(self.vocab)

    def _bpe(self, word: str) -> tuple:
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        parts = list(word)
        ranks = self.ranks
        while len(parts) > 1:
            best = None
            best_rank = None
            for pair in zip(parts, parts[1:]):
                r = ranks.get(pair)
                if r is not None and (best_rank is None or r < best_rank):
                    best, best_rank = pair, r
            if best is None:
                break
            first, second = best
            merged = []
            i = 0
            while i < len(parts):
                if i < len(parts) - 1 and parts[i] == first and parts[i + 1] == second:
                    merged.append(first + second)
                    i += 2
                else:
                    merged.append(parts[i])
                    i += 1
            parts = merged
        result = tuple(parts)
        self._cache[word] = result
        return result

    def encode(self, text: str) -> TokenSequence:
        return bpe_encode(text, self)

    def __call__(self, text: str) -> TokenSequence:
        return bpe_encode(text, self)

    def decode(self, ids) -> str:
        chars = "".join(self.decoder[i] for i in ids)
        return bytes(self.byte_decoder[c] for c in chars).decode("utf-8", errors="replace")


def bpe_encode(text: str, model: BpeModel) -> TokenSequence:
    """Split with the GPT-2 pre-tokenization regex, then merge lowest rank first."""
    byte_map = model.byte_map
    vocab = model.vocab
    ids: list[int] = []
    surface: list[str] = []
    for piece in GPT2_PATTERN.findall(text):
        word = "".join(byte_map[b] for b in piece.encode("utf-8"))
        for tok in model._bpe(word):
            ids.append(vocab[tok])
            surface.append(tok)
    return TokenSequence(ids, surface)


def load_bpe(vocab_file, merges_file) -> BpeModel:
    """Load and validate a GPT-2 format model.

    ``vocab_file`` is a JSON object mapping token to id. ``merges_file`` has one
    space-separated pair per line; a first line starting with ``#`` is a header.
    """
    try:
        vocab = json.loads(Path(vocab_file).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise MalformedVocab(f"{vocab_file}: not valid JSON ({exc})") from None
    if not isinstance(vocab, dict):
        raise MalformedVocab(f"{vocab_file}: expected a JSON object of token -> id")
    seen = {}
    for tok, idx in vocab.items():
        if not isinstance(idx, int) or isinstance(idx, bool) or idx < 0:
            raise MalformedVocab(f"{vocab_file}: id for {tok!r} is not a non-negative integer")
        if idx in seen:
            raise MalformedVocab(f"{vocab_file}: id {idx} used by {seen[idx]!r} and {tok!r}")
        seen[idx] = tok

    merges = []
    lines = Path(merges_file).read_text(encoding="utf-8").split("\n")
    for lineno, line in enumerate(lines, 1):
        if lineno == 1 and line.startswith("#"):
            continue
        if not line.strip():
            continue
        pair = line.split(" ")
        if len(pair) != 2 or not pair[0] or not pair[1]:
            raise MalformedMerges(f"{merges_file}:{lineno}: expected two space-separated symbols, got {line!r}")
        merges.append((pair[0], pair[1]))

    byte_map = bytes_to_unicode()
    missing = [c for c in byte_map.values() if c not in vocab]
    if missing:
        raise InconsistentModel(f"{len(missing)} byte symbols missing from vocab, e.g. {missing[0]!r}")
    for lineno, (a, b) in enumerate(merges, 1):
        if a + b not in vocab:
            raise InconsistentModel(f"merge #{lineno} ({a!r}, {b!r}) produces {a + b!r}, which is not in the vocab")
    return BpeModel(vocab, merges, byte_map)
