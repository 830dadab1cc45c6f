"""
Tests for genomes, patterns and Boolean dynamics.
"""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from grnevo.network import (
    DimensionMismatchError,
    Genome,
    GenomeFormatError,
    Pattern,
    find_attractor,
    hamming,
    settle,
    step,
)


def two_gene(a01: int, a10: int) -> Genome:
    entries = np.zeros((2, 2), dtype=np.int8)
    entries[0, 1] = a01
    entries[1, 0] = a10
    return Genome(entries)


class TestGenome:
    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            Genome(np.zeros((2, 3), dtype=np.int8))

    def test_rejects_out_of_range_entries(self):
        with pytest.raises(ValueError):
            Genome(np.array([[0, 2], [0, 0]]))

    def test_entries_are_read_only(self):
        g = Genome.identity(3)
        with pytest.raises(ValueError):
            g.entries[0, 0] = 0

    def test_edge_count_and_regulators(self):
        g = Genome(np.array([[1, 0, -1], [0, 0, 1], [0, 0, 1]]))
        assert g.edge_count == 4
        assert g.regulators(2) == 3
        assert g.regulators(1) == 0

    def test_text_format(self, tmp_path):
        g = Genome(np.array([[1, -1], [0, 1]]))
        path = g.save(tmp_path / "g.txt")
        assert path.read_text().splitlines()[0] == "n=2"
        assert Genome.load(path) == g

    def test_text_format_reports_bad_row(self):
        with pytest.raises(GenomeFormatError, match="Line 3"):
            Genome.from_text("n=2\n1 0\n1 x\n")


class TestPattern:
    def test_string_forms(self):
        assert Pattern.from_string("+-+").to_string() == "+-+"
        assert Pattern.from_string("+1, -1, +1") == Pattern.of([1, -1, 1])

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            Pattern.of([1, 0])

    def test_negation(self):
        assert (-Pattern.from_string("+-")).to_string() == "-+"


class TestStep:
    def test_zero_genome_maps_to_all_off(self):
        s = Pattern.of([1, 1, 1])
        assert step(Genome.zeros(3), s) == Pattern.of([-1, -1, -1])

    def test_identity_keeps_state(self):
        s = Pattern.from_string("+--+")
        assert step(Genome.identity(4), s) == s

    def test_hand_traced_two_gene_update(self):
        assert step(two_gene(1, -1), Pattern.of([1, 1])) == Pattern.of([-1, 1])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            step(Genome.identity(3), Pattern.of([1, 1]))


class TestFindAttractor:
    def test_identity_is_fixed_at_step_zero(self):
        s = Pattern.from_string("+-+-")
        result = find_attractor(Genome.identity(4), s)
        assert result.resolved
        assert result.pattern == s
        assert result.steps == 0

    def test_two_cycle_is_unresolved(self):
        result = find_attractor(two_gene(1, 1), Pattern.of([1, -1]), max_steps=20)
        assert not result.resolved
        assert result.pattern is None
        assert result.steps == 20

    def test_zero_genome_settles_to_all_off(self):
        result = find_attractor(Genome.zeros(5), Pattern.from_string("+-+-+"))
        assert result.pattern == Pattern.from_string("-----")
        assert result.steps <= 1

    def test_rejects_non_positive_budget(self):
        with pytest.raises(ValueError):
            find_attractor(Genome.identity(2), Pattern.of([1, 1]), max_steps=0)

    def test_batched_settle_matches_single(self):
        rng = np.random.default_rng(3)
        genomes = rng.integers(-1, 2, size=(4, 6, 6)).astype(np.int8)
        states = np.where(rng.random((4, 5, 6)) < 0.5, 1, -1).astype(np.int8)
        final, resolved, steps = settle(genomes, states, 20)
        for b in range(4):
            for p in range(5):
                single = find_attractor(Genome(genomes[b]), Pattern(states[b, p]), 20)
                assert single.resolved == resolved[b, p]
                if single.resolved:
                    assert single.pattern == Pattern(final[b, p])
                    assert single.steps == steps[b, p]


class TestHamming:
    def test_identical_and_opposite(self):
        a = Pattern.from_string("+-+-+-+-+-")
        assert hamming(a, a) == 0
        assert hamming(a, -a) == 10

    def test_reference_targets_differ_in_five_genes(self):
        assert hamming(Pattern.from_string("+-+-+-+-+-"), Pattern.from_string("+-+-++-+-+")) == 5

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            hamming(Pattern.of([1, 1]), Pattern.of([1, 1, 1]))

    @settings(max_examples=100, deadline=None)
    @given(
        st.integers(1, 20).flatmap(
            lambda n: st.tuples(*[st.lists(st.sampled_from([-1, 1]), min_size=n, max_size=n)] * 3)
        )
    )
    def test_is_a_metric(self, triple):
        a, b, c = (Pattern.of(values) for values in triple)
        assert hamming(a, b) == hamming(b, a)
        assert (hamming(a, b) == 0) == (a == b)
        assert hamming(a, c) <= hamming(a, b) + hamming(b, c)
