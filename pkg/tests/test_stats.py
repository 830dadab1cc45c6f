"""
Tests for the signed-rank test and replicate summaries.
"""

import itertools
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from grnevo.stats import (
    Alternative,
    PairedSamples,
    exact_null_counts,
    signed_ranks,
    summarize,
    wilcoxon_signed_rank,
)


def brute_force_tails(diffs):
    ranks, positive = signed_ranks(diffs)
    w = ranks[positive].sum()
    sums = [
        sum(r for r, s in zip(ranks, signs) if s)
        for signs in itertools.product((False, True), repeat=ranks.size)
    ]
    sums = np.array(sums)
    return float(np.mean(sums >= w - 1e-9)), float(np.mean(sums <= w + 1e-9))


class TestSignedRank:
    def test_all_positive(self):
        result = wilcoxon_signed_rank([1, 2, 3], Alternative.A_GREATER_B)
        assert result.statistic == 6
        assert result.p_value == pytest.approx(0.125)
        assert result.method == "exact"

    def test_two_sided_doubles(self):
        result = wilcoxon_signed_rank([1, 2, 3], "two_sided")
        assert result.p_value == pytest.approx(0.25)

    def test_symmetric_two_sided_caps_at_one(self):
        result = wilcoxon_signed_rank([1, -1])
        assert result.statistic == 1.5
        assert result.p_value == 1.0

    def test_zero_differences_dropped(self):
        result = wilcoxon_signed_rank([0, 0, 1, 2, 3], Alternative.A_GREATER_B)
        assert result.n_used == 3
        assert result.p_value == pytest.approx(0.125)

    def test_no_signal(self):
        samples = PairedSamples((0.5, 0.6), (0.5, 0.6))
        result = wilcoxon_signed_rank(samples, Alternative.A_LESS_B)
        assert result.no_signal
        assert result.p_value is None

    def test_paired_direction(self):
        samples = PairedSamples.from_pairs([(1.0, 2.0), (1.0, 3.0), (1.0, 4.0)])
        assert wilcoxon_signed_rank(samples, Alternative.A_LESS_B).p_value == pytest.approx(0.125)
        assert wilcoxon_signed_rank(samples, Alternative.A_GREATER_B).p_value == 1.0

    def test_unpaired_rejected(self):
        with pytest.raises(ValueError):
            PairedSamples((1.0,), (1.0, 2.0))

    def test_reportable(self):
        assert not PairedSamples((1,) * 4, (2,) * 4).reportable
        assert PairedSamples((1,) * 5, (2,) * 5).reportable

    @pytest.mark.parametrize("seed", range(6))
    def test_exact_matches_enumeration(self, seed):
        rng = np.random.default_rng(seed)
        diffs = rng.integers(-4, 5, size=12)
        if not diffs.any():
            diffs[0] = 1
        upper, lower = brute_force_tails(diffs)
        assert wilcoxon_signed_rank(diffs, "a_greater_b").p_value == pytest.approx(upper)
        assert wilcoxon_signed_rank(diffs, "a_less_b").p_value == pytest.approx(lower)

    def test_null_counts_cover_all_assignments(self):
        counts = exact_null_counts(np.array([1.0, 2.5, 2.5, 4.0]))
        assert counts.sum() == 16
        assert counts[0] == 1
        assert np.array_equal(counts, counts[::-1])

    def test_tails_overlap_at_observed_value(self):
        diffs = [3, -1, 4, 1.5, -5, 9, 2]
        ranks, positive = signed_ranks(diffs)
        counts = exact_null_counts(ranks)
        w = ranks[positive].sum()
        p_at_w = counts[int(round(2 * w))] / counts.sum()
        upper = wilcoxon_signed_rank(diffs, "a_greater_b").p_value
        lower = wilcoxon_signed_rank(diffs, "a_less_b").p_value
        assert upper + lower == pytest.approx(1 + p_at_w)

    def test_normal_close_to_exact_at_boundary(self):
        diffs = np.arange(1, 21, dtype=float)
        diffs[[0, 3, 5, 8, 12, 16]] *= -1
        exact = wilcoxon_signed_rank(diffs, "a_greater_b")
        normal = wilcoxon_signed_rank(diffs, "a_greater_b", exact_max=0)
        assert exact.method == "exact"
        assert normal.method == "normal"
        assert exact.statistic == normal.statistic == 160
        assert abs(exact.p_value - normal.p_value) < 0.01

    def test_large_samples_use_normal(self):
        result = wilcoxon_signed_rank(np.arange(1, 31), "a_greater_b")
        assert result.method == "normal"
        assert result.p_value < 1e-5

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=1, max_size=15))
    def test_swapping_treatments_swaps_tails(self, pairs):
        forward = PairedSamples.from_pairs(pairs)
        backward = PairedSamples.from_pairs([(b, a) for a, b in pairs])
        less = wilcoxon_signed_rank(forward, "a_less_b")
        greater = wilcoxon_signed_rank(backward, "a_greater_b")
        assert less.method == greater.method
        if not less.no_signal:
            assert less.p_value == pytest.approx(greater.p_value)

    @settings(max_examples=50, deadline=None)
    @given(
        st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=1, max_size=25),
        st.integers(-1000, 1000),
    )
    def test_common_shift_leaves_result_unchanged(self, pairs, shift):
        base = PairedSamples.from_pairs(pairs)
        moved = PairedSamples.from_pairs([(a + shift, b + shift) for a, b in pairs])
        for alternative in Alternative:
            before = wilcoxon_signed_rank(base, alternative)
            after = wilcoxon_signed_rank(moved, alternative)
            assert after.method == before.method
            assert after.statistic == before.statistic
            if before.p_value is None:
                assert after.p_value is None
            else:
                assert after.p_value == pytest.approx(before.p_value)


class TestSummary:
    def test_values(self):
        s = summarize([1, 2, 3, 4])
        assert s.count == 4
        assert s.mean == 2.5
        assert s.median == 2.5
        assert s.std == pytest.approx(np.sqrt(5 / 3))
        assert (s.min, s.max) == (1, 4)

    def test_single_value(self):
        assert summarize([0.7]).std == 0.0

    def test_empty(self):
        with pytest.raises(ValueError):
            summarize([])

    def test_to_dict(self):
        assert set(summarize([1.0]).to_dict()) == {"count", "mean", "median", "std", "min", "max"}
