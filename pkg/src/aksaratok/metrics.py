"""Tokens-per-character and Smith-Waterman token-sequence similarity."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

import numpy as np
from scipy import stats

from .errors import EmptySequence, EmptyText, NoValidSamples, PairMismatch


@dataclass(frozen=True)
class AlignmentParams:
    match_score: int = 2
    mismatch_score: int = -1
    gap_penalty_per_step: int = 1

    def __post_init__(self):
        if self.match_score <= 0:
            raise ValueError(f"match_score must be positive, got {self.match_score}")
        if self.gap_penalty_per_step < 0:
            raise ValueError(f"gap_penalty_per_step must be >= 0, got {self.gap_penalty_per_step}")


DEFAULT_PARAMS = AlignmentParams()


def _ids(seq) -> Sequence:
    return seq.ids if hasattr(seq, "ids") else seq


def tpc(seq, original_length: int) -> float:
    """Tokens per character: ``len(seq) / original_length``."""
    if original_length <= 0:
        raise EmptyText("TPC is undefined for empty text")
    return len(_ids(seq)) / original_length


# Below this many DP cells the plain loop beats numpy's per-call overhead.
_SMALL = 400


def _sw_loop(a, b, match, mismatch, gap) -> int:
    prev = [0] * (len(b) + 1)
    best = 0
    for x in a:
        cur = [0]
        left = 0
        for j, y in enumerate(b, 1):
            h = prev[j - 1] + (match if x == y else mismatch)
            up = prev[j] - gap
            if up > h:
                h = up
            if left - gap > h:
                h = left - gap
            if h < 0:
                h = 0
            cur.append(h)
            left = h
            if h > best:
                best = h
        prev = cur
    return best


def _sw_rows(a, b, match, mismatch, gap) -> int:
    # With linear gaps the within-row recurrence H[j] = max(T[j], H[j-1] - gap)
    # unrolls to max_k(T[k] - gap*(j-k)), i.e. a running max of T + gap*k.
    a = np.asarray(a)
    b = np.asarray(b)
    m = len(b)
    ramp = gap * np.arange(m + 1, dtype=np.int64)
    prev = np.zeros(m + 1, dtype=np.int64)
    best = 0
    for x in a:
        sub = np.where(b == x, match, mismatch)
        t = np.empty(m + 1, dtype=np.int64)
        t[0] = 0
        np.maximum(prev[:-1] + sub, prev[1:] - gap, out=t[1:])
        np.maximum(t, 0, out=t)
        row = np.maximum.accumulate(t + ramp) - ramp
        best = max(best, int(row.max()))
        prev = row
    return best


def smith_waterman(a, b, params: AlignmentParams = DEFAULT_PARAMS) -> int:
    """Best local alignment score between two token sequences.

    Tokens are compared by id. Scoring is ``match_score`` / ``mismatch_score`` per
    aligned pair and ``gap_penalty_per_step`` for every token left unaligned
    inside the alignment; the score never drops below zero.
    """
    a, b = _ids(a), _ids(b)
    if not len(a) or not len(b):
        return 0
    args = (params.match_score, params.mismatch_score, params.gap_penalty_per_step)
    if len(a) * len(b) <= _SMALL:
        return _sw_loop(a, b, *args)
    return _sw_rows(a, b, *args)


def similarity(a, b, params: AlignmentParams = DEFAULT_PARAMS) -> float:
    """Alignment score over the geometric mean of both self-alignment maxima."""
    n, m = len(_ids(a)), len(_ids(b))
    if n == 0 or m == 0:
        raise EmptySequence("similarity needs two non-empty sequences")
    return smith_waterman(a, b, params) / (params.match_score * math.sqrt(n * m))


@dataclass
class SimilarityReport:
    """Mean similarity per unordered language pair (self-pairs excluded)."""

    languages: list
    pair_means: dict
    pair_counts: dict = field(default_factory=dict)
    sample_count: int = 0
    scheme: str = ""

    def key(self, a: str, b: str) -> tuple:
        if (a, b) in self.pair_means:
            return (a, b)
        if (b, a) in self.pair_means:
            return (b, a)
        raise KeyError((a, b))

    def __getitem__(self, pair) -> float:
        return self.pair_means[self.key(*pair)]

    def pairs(self) -> list:
        return list(self.pair_means)

    def matrix(self) -> list:
        """Symmetric list-of-lists over ``languages``; diagonal and missing pairs are None."""
        out = []
        for a in self.languages:
            row = []
            for b in self.languages:
                row.append(None if a == b else self.pair_means.get((a, b), self.pair_means.get((b, a))))
            out.append(row)
        return out

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "languages": list(self.languages),
            "sample_count": self.sample_count,
            "pairs": [
                {"lang_a": a, "lang_b": b, "mean": _sig(v), "n": self.pair_counts.get((a, b), 0)}
                for (a, b), v in self.pair_means.items()
            ],
            "matrix": [[None if v is None else _sig(v) for v in row] for row in self.matrix()],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimilarityReport":
        means = {(p["lang_a"], p["lang_b"]): float(p["mean"]) for p in data["pairs"]}
        counts = {(p["lang_a"], p["lang_b"]): int(p.get("n", 0)) for p in data["pairs"]}
        return cls(list(data["languages"]), means, counts, int(data.get("sample_count", 0)), data.get("scheme", ""))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lang_a", "lang_b", "value"])
        for (a, b), v in self.pair_means.items():
            w.writerow([a, b, f"{v:.9g}"])
        return buf.getvalue()


def _sig(x: float) -> float:
    """Round to 9 significant digits so serialized numbers diff cleanly."""
    if x is None or not math.isfinite(x):
        return x
    return float(f"{x:.9g}")


def pair_report(
    corpus,
    tokenize: Callable,
    params: AlignmentParams = DEFAULT_PARAMS,
    scheme: str = "",
) -> SimilarityReport:
    """Mean similarity for every unordered pair of languages in ``corpus``.

    Each sentence is tokenized once. Samples where either side tokenizes to an
    empty sequence are left out of that pair's mean.
    """
    langs = list(corpus.languages)
    if len(langs) < 2:
        raise ValueError("pair_report needs at least two languages")
    if not corpus.samples:
        raise NoValidSamples("corpus has no samples")
    encoded = {lang: [_ids(tokenize(row[lang])) for row in corpus.samples] for lang in langs}
    means, counts = {}, {}
    for a, b in combinations(langs, 2):
        values = [
            similarity(x, y, params)
            for x, y in zip(encoded[a], encoded[b])
            if len(x) and len(y)
        ]
        if not values:
            raise NoValidSamples(f"no sample has non-empty text for both {a} and {b}")
        means[(a, b)] = math.fsum(values) / len(values)
        counts[(a, b)] = len(values)
    return SimilarityReport(langs, means, counts, len(corpus.samples), scheme)


@dataclass
class ReportComparison:
    slope: float
    intercept: float
    pearson_r: float
    spearman_rho: float
    pairs: list
    differences: dict

    def to_dict(self, first: SimilarityReport | None = None, second: SimilarityReport | None = None) -> dict:
        out = {
            "slope": _sig(self.slope),
            "intercept": _sig(self.intercept),
            "pearson_r": _sig(self.pearson_r),
            "spearman_rho": _sig(self.spearman_rho),
            "n_pairs": len(self.pairs),
            "pairs": [],
        }
        for a, b in self.pairs:
            row = {"lang_a": a, "lang_b": b, "diff": _sig(self.differences[(a, b)])}
            if first is not None and second is not None:
                row["a"] = _sig(first[(a, b)])
                row["b"] = _sig(second[(a, b)])
            out["pairs"].append(row)
        return out

    def diff_matrix(self, languages: Sequence[str]) -> list:
        lookup = dict(self.differences)
        lookup.update({(b, a): v for (a, b), v in self.differences.items()})
        return [[None if a == b else lookup.get((a, b)) for b in languages] for a in languages]


def compare_reports(syl: SimilarityReport, base: SimilarityReport) -> ReportComparison:
    """Regress ``syl`` pair means on ``base`` pair means and correlate them.

    Pairs are matched regardless of order. ``differences`` holds ``syl - base``.
    Correlations are NaN when either side is constant.
    """
    syl_keys = {frozenset(k) for k in syl.pair_means}
    base_keys = {frozenset(k) for k in base.pair_means}
    if syl_keys != base_keys:
        only_a = sorted(tuple(sorted(k)) for k in syl_keys - base_keys)
        only_b = sorted(tuple(sorted(k)) for k in base_keys - syl_keys)
        raise PairMismatch(f"reports cover different pairs: only in first {only_a}, only in second {only_b}")
    pairs = list(syl.pair_means)
    y = np.array([syl.pair_means[p] for p in pairs], dtype=float)
    x = np.array([base[p] for p in pairs], dtype=float)
    diffs = {p: float(syl.pair_means[p] - base[p]) for p in pairs}

    if len(pairs) >= 2 and np.ptp(x) > 0:
        fit = stats.linregress(x, y)
        slope, intercept = float(fit.slope), float(fit.intercept)
    else:
        slope = intercept = math.nan
    if len(pairs) >= 2 and np.ptp(x) > 0 and np.ptp(y) > 0:
        r = float(stats.pearsonr(x, y)[0])
        rho = float(stats.spearmanr(x, y)[0])
    else:
        r = rho = math.nan
    return ReportComparison(slope, intercept, r, rho, pairs, diffs)


def load_report(path) -> SimilarityReport:
    with open(path, encoding="utf-8") as f:
        return SimilarityReport.from_dict(json.load(f))
