"""Significance tests and summaries for treatment comparisons."""

from grnevo.stats.summary import Summary, summarize
from grnevo.stats.wilcoxon import (
    EXACT_MAX_PAIRS,
    MIN_REPORTED_PAIRS,
    Alternative,
    PairedSamples,
    WilcoxonResult,
    exact_null_counts,
    signed_ranks,
    wilcoxon_signed_rank,
)

__all__ = [
    "EXACT_MAX_PAIRS",
    "MIN_REPORTED_PAIRS",
    "Alternative",
    "PairedSamples",
    "Summary",
    "WilcoxonResult",
    "exact_null_counts",
    "signed_ranks",
    "summarize",
    "wilcoxon_signed_rank",
]
