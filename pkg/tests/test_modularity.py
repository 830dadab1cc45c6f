"""
Tests for partitions and fixed-partition Q.
"""

import sys
from pathlib import Path

import networkx as nx
import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from grnevo.config import PACKAGE_CONFIGS, load_config
from grnevo.evolution.operators import random_entries
from grnevo.evolution.schedule import TargetSchedule
from grnevo.modularity import EdgeCollapse, Partition, derive_partition, q_score
from grnevo.network import Genome


def edges_genome(n, edges):
    entries = np.zeros((n, n), dtype=np.int8)
    for src, dst in edges:
        entries[src, dst] = 1
    return Genome(entries)


class TestPartition:
    def test_contiguous_ids_required(self):
        with pytest.raises(ValueError):
            Partition((0, 2))

    def test_string_form(self):
        p = Partition.from_string("0,0,1,1")
        assert p.k == 2
        assert p.to_string() == "0,0,1,1"
        assert p.members(1) == [2, 3]

    def test_reference_schedule(self):
        p = derive_partition(TargetSchedule.reference())
        assert p.module_of == (0,) * 5 + (1,) * 5

    def test_single_target_is_one_module(self):
        schedule = TargetSchedule.from_strings(["+-+-"], [0])
        assert derive_partition(schedule) == Partition.single(4)

    def test_extended_schedule_has_three_blocks(self):
        cfg = load_config(PACKAGE_CONFIGS / "extended15.conf")
        p = derive_partition(cfg.schedule())
        assert p.k == 3
        assert p.module_of == (0,) * 5 + (1,) * 5 + (2,) * 5


class TestQScore:
    def setup_method(self):
        self.halves = Partition((0, 0, 1, 1))

    def test_single_module_is_zero(self):
        g = edges_genome(4, [(0, 1), (1, 2), (2, 3)])
        assert q_score(g, Partition.single(4)) == pytest.approx(0.0)

    def test_two_separate_modules(self):
        g = edges_genome(4, [(0, 1), (2, 3)])
        assert q_score(g, self.halves) == pytest.approx(0.5)

    def test_all_edges_across(self):
        g = edges_genome(4, [(0, 2), (1, 3)])
        assert q_score(g, self.halves) == pytest.approx(-0.5)

    def test_no_edges_is_undefined(self):
        assert q_score(Genome.zeros(4), self.halves) is None

    @pytest.mark.parametrize("collapse", list(EdgeCollapse))
    def test_transpose_invariant(self, collapse):
        rng = np.random.default_rng(8)
        partition = derive_partition(TargetSchedule.reference())
        for _ in range(20):
            entries = random_entries(10, 25, rng)
            q = q_score(Genome(entries), partition, collapse)
            assert q_score(Genome(entries.T.copy()), partition, collapse) == pytest.approx(q)

    def test_self_loop(self):
        g = edges_genome(4, [(0, 0), (2, 3)])
        assert q_score(g, self.halves) == pytest.approx(0.5)

    def test_sign_is_ignored(self):
        g = edges_genome(4, [(0, 1), (2, 3)])
        assert q_score(Genome(-g.entries), self.halves) == q_score(g, self.halves)

    def test_reciprocal_edges(self):
        g = edges_genome(4, [(0, 1), (1, 0), (2, 3)])
        assert q_score(g, self.halves, EdgeCollapse.UNION) == pytest.approx(0.5)
        assert q_score(g, self.halves, "multi") == pytest.approx(4 / 9)

    def test_partition_size_checked(self):
        with pytest.raises(ValueError):
            q_score(Genome.zeros(3), self.halves)

    def test_matches_networkx(self):
        rng = np.random.default_rng(11)
        partition = Partition((0,) * 5 + (1,) * 5)
        communities = [set(partition.members(0)), set(partition.members(1))]
        for _ in range(25):
            entries = random_entries(10, 20, rng)
            np.fill_diagonal(entries, 0)
            if not entries.any():
                continue
            graph = nx.Graph()
            graph.add_nodes_from(range(10))
            graph.add_edges_from(zip(*np.nonzero(entries)))
            expected = nx.community.modularity(graph, communities)
            assert q_score(entries, partition) == pytest.approx(expected)
