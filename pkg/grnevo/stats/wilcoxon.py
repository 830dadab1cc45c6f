"""Wilcoxon signed-rank test for seed-matched treatment comparisons.

Zero differences are dropped and tied magnitudes receive mid-ranks. With at
most ``EXACT_MAX_PAIRS`` nonzero differences the null distribution of W is
counted exactly over all sign assignments; above that a normal approximation
with tie and continuity corrections is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import norm, rankdata

EXACT_MAX_PAIRS = 20
MIN_REPORTED_PAIRS = 5


class Alternative(str, Enum):
    A_LESS_B = "a_less_b"
    A_GREATER_B = "a_greater_b"
    TWO_SIDED = "two_sided"


@dataclass(frozen=True)
class PairedSamples:
    """Replicate values of treatments a and b; position k of each is the same seed."""

    a: Tuple[float, ...]
    b: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.a) != len(self.b):
            raise ValueError(f"Unpaired samples: {len(self.a)} vs {len(self.b)} values")
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))
        object.__setattr__(self, "b", tuple(float(v) for v in self.b))

    @classmethod
    def from_pairs(cls, pairs: Sequence[Tuple[float, float]]) -> "PairedSamples":
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def __len__(self) -> int:
        return len(self.a)

    @property
    def reportable(self) -> bool:
        return len(self) >= MIN_REPORTED_PAIRS

    def differences(self) -> np.ndarray:
        return np.asarray(self.a, dtype=np.float64) - np.asarray(self.b, dtype=np.float64)


@dataclass(frozen=True)
class WilcoxonResult:
    statistic: Optional[float]
    p_value: Optional[float]
    n_used: int
    method: str  # "exact", "normal" or "no-signal"
    alternative: Alternative

    @property
    def no_signal(self) -> bool:
        return self.method == "no-signal"


def signed_ranks(diffs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Mid-ranks of ``|d|`` and the positive mask, zero differences removed."""
    diffs = np.asarray(diffs, dtype=np.float64)
    diffs = diffs[diffs != 0]
    return rankdata(np.abs(diffs), method="average"), diffs > 0


def exact_null_counts(ranks: np.ndarray) -> np.ndarray:
    """Number of sign assignments reaching each doubled rank sum.

    Index ``s`` holds the count of assignments with ``2 * W == s``; mid-ranks
    are multiples of 1/2, so doubling makes every sum an integer.
    """
    doubled = np.rint(2 * np.asarray(ranks)).astype(np.int64)
    counts = np.zeros(int(doubled.sum()) + 1, dtype=np.float64)
    counts[0] = 1.0
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: counts.size - r]
        counts = counts + shifted
    return counts


def _exact_tails(ranks: np.ndarray, w: float) -> Tuple[float, float]:
    counts = exact_null_counts(ranks)
    total = counts.sum()
    s = int(round(2 * w))
    upper = counts[s:].sum() / total  # P(W >= w)
    lower = counts[: s + 1].sum() / total  # P(W <= w)
    return float(upper), float(lower)


def _normal_tails(ranks: np.ndarray, w: float) -> Tuple[float, float]:
    m = ranks.size
    mean = m * (m + 1) / 4.0
    _, ties = np.unique(ranks, return_counts=True)
    var = m * (m + 1) * (2 * m + 1) / 24.0 - float(np.sum(ties**3 - ties)) / 48.0
    sd = np.sqrt(var)
    upper = norm.sf((w - mean - 0.5) / sd)
    lower = norm.cdf((w - mean + 0.5) / sd)
    return float(upper), float(lower)


def wilcoxon_signed_rank(
    samples: Union[PairedSamples, Sequence[float], np.ndarray],
    alternative: Union[Alternative, str] = Alternative.TWO_SIDED,
    exact_max: int = EXACT_MAX_PAIRS,
) -> WilcoxonResult:
    """Signed-rank test of ``a - b``; ``samples`` may be pairs or raw differences.

    W is the rank sum of the positive differences. ``a_greater_b`` reports
    P(W >= w), ``a_less_b`` P(W <= w) and ``two_sided`` twice the smaller
    tail, capped at 1. All-zero differences give a ``no-signal`` result.
    """
    alternative = Alternative(alternative)
    diffs = samples.differences() if isinstance(samples, PairedSamples) else np.asarray(samples, dtype=np.float64)
    ranks, positive = signed_ranks(diffs)
    if ranks.size == 0:
        return WilcoxonResult(None, None, 0, "no-signal", alternative)

    w = float(ranks[positive].sum())
    if ranks.size <= exact_max:
        method = "exact"
        upper, lower = _exact_tails(ranks, w)
    else:
        method = "normal"
        upper, lower = _normal_tails(ranks, w)

    if alternative is Alternative.A_GREATER_B:
        p = upper
    elif alternative is Alternative.A_LESS_B:
        p = lower
    else:
        p = 2.0 * min(upper, lower)
    return WilcoxonResult(w, min(1.0, p), int(ranks.size), method, alternative)
