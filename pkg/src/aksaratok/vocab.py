"""Syllable census, vocabulary selection and power-law fit of syllable counts."""

from __future__ import annotations

import hashlib
import json
import math
import string
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateDistribution,
    InsufficientData,
    InvalidCharacter,
    MalformedVocab,
    TargetTooSmall,
)
from .segmentation import PhonologyConfig, segment

UNK_TOKEN = "<unk>"
UNK_ID = 0

# Printable ASCII without tab/newline variants. Added as base symbols by the CLI so
# spaces, digits and punctuation in running text do not fall to UNK.
ASCII_BASE_SYMBOLS = "".join(c for c in string.printable if c not in "\t\n\r\x0b\x0c")


@dataclass
class SyllableCensus:
    counts: dict = field(default_factory=dict)
    skipped: int = 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __len__(self):
        return len(self.counts)

    def count(self, syllable: str) -> int:
        return self.counts.get(syllable, 0)


def census(wordlist: Iterable[str], cfg: PhonologyConfig | None = None) -> SyllableCensus:
    """Count segment surface forms over a list of normalized words.

    Words containing characters outside the phonology are skipped and counted in
    ``skipped``; empty strings are ignored.
    """
    cfg = cfg or PhonologyConfig.default()
    counts: Counter = Counter()
    skipped = 0
    for word in wordlist:
        if not word:
            continue
        try:
            segs = segment(word, cfg)
        except InvalidCharacter:
            skipped += 1
            continue
        counts.update(s.surface for s in segs)
    return SyllableCensus(dict(counts), skipped)


@dataclass
class Vocabulary:
    """Token inventory. Id 0 is always the UNK token."""

    tokens: list
    base_symbol_count: int = 0
    index: dict = field(init=False, repr=False)

    def __post_init__(self):
        if not self.tokens or self.tokens[0] != UNK_TOKEN:
            self.tokens = [UNK_TOKEN] + list(self.tokens)
        self.index = {}
        for i, tok in enumerate(self.tokens):
            if tok in self.index:
                raise MalformedVocab(f"duplicate token {tok!r} at ids {self.index[tok]} and {i}")
            if not tok or "\n" in tok:
                raise MalformedVocab(f"token {tok!r} at id {i} is empty or contains a newline")
            self.index[tok] = i

    def __len__(self):
        return len(self.tokens)

    def __contains__(self, token):
        return token in self.index

    def id_of(self, token: str) -> int:
        return self.index.get(token, UNK_ID)

    def to_text(self) -> str:
        # UNK is implicit in the file; line n (1-based) holds id n
        return "".join(tok + "\n" for tok in self.tokens[1:])

    def vocab_hash(self) -> str:
        return hashlib.sha256(self.to_text().encode("utf-8")).hexdigest()


def build_vocabulary(
    census: SyllableCensus,
    wordlist: Sequence[str],
    target_size: int,
    cfg: PhonologyConfig | None = None,
    extra_symbols: Iterable[str] = (),
) -> Vocabulary:
    """Select ``target_size`` tokens (UNK not counted).

    Selection order: every base character (characters of the word list plus
    ``extra_symbols``), then monosyllabic words by frequency, then the remaining
    syllables by frequency. Frequency ties go to the lexicographically smaller
    token, so the ranking is a fixed list and a larger target only extends it.
    """
    cfg = cfg or PhonologyConfig.default()
    if target_size <= 0:
        raise TargetTooSmall(f"target_size must be positive, got {target_size}")
    base = sorted({ch for w in wordlist for ch in w} | set(extra_symbols))
    if len(base) > target_size:
        raise TargetTooSmall(f"{len(base)} base characters do not fit in target_size={target_size}")

    def rank(tokens):
        return sorted(tokens, key=lambda t: (-census.count(t), t))

    chosen = set(base)
    mono = set()
    for w in wordlist:
        if len(w) < 2 or w in chosen:
            continue
        try:
            if len(segment(w, cfg)) == 1:
                mono.add(w)
        except InvalidCharacter:
            continue
    ranked = rank(mono) + rank(t for t in census.counts if t not in mono)

    tokens = list(base)
    for tok in ranked:
        if len(tokens) >= target_size:
            break
        if tok not in chosen:
            chosen.add(tok)
            tokens.append(tok)
    return Vocabulary(tokens, base_symbol_count=len(base))


def write_vocabulary(vocab: Vocabulary, path, metadata: dict | None = None) -> Path:
    """Write the token file and its ``.meta.json`` sidecar; returns the sidecar path."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(vocab.to_text())
    meta = {
        "size": len(vocab),
        "base_symbol_count": vocab.base_symbol_count,
        "unk_token": UNK_TOKEN,
        "vocab_hash": vocab.vocab_hash(),
    }
    meta.update(metadata or {})
    sidecar = path.with_name(path.name + ".meta.json")
    with open(sidecar, "w", encoding="utf-8") as f:
        json.dump(meta, f, ensure_ascii=False, indent=2, sort_keys=True)
        f.write("\n")
    return sidecar


def load_vocabulary(path) -> Vocabulary:
    path = Path(path)
    with open(path, encoding="utf-8", newline="") as f:
        text = f.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    base_count = 0
    sidecar = path.with_name(path.name + ".meta.json")
    if sidecar.exists():
        base_count = json.loads(sidecar.read_text(encoding="utf-8")).get("base_symbol_count", 0)
    else:
        base_count = sum(1 for t in lines if len(t) == 1)
    return Vocabulary(lines, base_symbol_count=base_count)


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    beta: float
    x_min: int
    n_tail: int


def hill_alpha(values, x_min: float, discrete: bool = True) -> float:
    """Maximum-likelihood exponent of ``p(x) ~ x**-alpha`` for ``x >= x_min``.

    For integer data the continuous estimator is applied with ``x_min - 1/2`` in
    the log ratio (Clauset, Shalizi & Newman 2009); without it the
    estimate on counts with small ``x_min`` is biased upwards by ~0.25.
    """
    x = np.asarray(values, dtype=float)
    x = x[x >= x_min]
    if x.size < 2:
        raise InsufficientData(f"only {x.size} values at or above x_min={x_min}")
    ref = x_min - 0.5 if discrete else x_min
    logsum = float(np.log(x / ref).sum())
    if logsum <= 0:
        raise DegenerateDistribution("all tail values equal x_min")
    return 1.0 + x.size / logsum


def fit_power_law(census: SyllableCensus, x_min: int | None = None) -> PowerLawFit:
    """Fit the exponent of the syllable count distribution.

    ``x_min`` defaults to the smallest count that is at least 2. ``beta`` is the
    matching rank-frequency (Zipf) exponent ``1 / (alpha - 1)``.
    """
    counts = list(census.counts.values())
    if len(counts) < 10:
        raise InsufficientData(f"need at least 10 distinct syllables, got {len(counts)}")
    if min(counts) == max(counts):
        raise DegenerateDistribution(f"all {len(counts)} syllables have count {counts[0]}")
    if x_min is None:
        x_min = min(c for c in counts if c >= 2)
    alpha = hill_alpha(counts, x_min, discrete=True)
    n_tail = sum(1 for c in counts if c >= x_min)
    beta = 1.0 / (alpha - 1.0) if alpha != 1.0 else math.inf
    return PowerLawFit(alpha, beta, int(x_min), n_tail)
