"""
Acceptance checks. The experiment checks take hours; run with ``pytest -m slow``.
"""

import os
import sys
import time
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from grnevo.analysis import extract_dominance, removal_paths, trim_inter_module
from grnevo.config import load_config
from grnevo.evolution.operators import random_entries
from grnevo.evolution.trial import run_trial
from grnevo.fitness.evaluator import evaluate_genomes, fitness_ceiling, gamma_values
from grnevo.fitness.oracle import expected_gamma
from grnevo.fitness.perturbation import sample_perturbations
from grnevo.harness import load_records, load_spec, run_experiment
from grnevo.harness.analyze import analysis_rng, analysis_sets, trim_analysis
from grnevo.modularity import Partition, q_score
from grnevo.network import Genome, Pattern

pytestmark = pytest.mark.slow


def brute_force_q(entries, labels):
    """Classify every undirected edge by hand."""
    n = entries.shape[0]
    edges = set()
    for j in range(n):
        for i in range(n):
            if entries[j, i]:
                edges.add((min(i, j), max(i, j)))
    if not edges:
        return None
    total = len(edges)
    k = max(labels) + 1
    inside = [0] * k
    degree = [0] * k
    for u, v in edges:
        degree[labels[u]] += 1
        degree[labels[v]] += 1
        if labels[u] == labels[v]:
            inside[labels[u]] += 1
    return sum(inside[m] / total - (degree[m] / (2 * total)) ** 2 for m in range(k))


class TestOracleEquivalence:
    def test_monte_carlo_within_four_standard_errors(self):
        rng = np.random.default_rng(2024)
        p_count = 50000
        for _ in range(50):
            genome = Genome(random_entries(8, int(rng.integers(4, 33)), rng))
            target = Pattern(np.where(rng.random(8) < 0.5, 1, -1))
            values = gamma_values(genome.entries[None], sample_perturbations(target, p_count, 0.15, rng))[0]
            se = values.std(ddof=1) / np.sqrt(p_count)
            exact = expected_gamma(genome, target, 0.15)
            assert abs(values.mean() - exact) <= 4 * se + 1e-12


class TestModularityBounds:
    def test_range_and_brute_force(self):
        rng = np.random.default_rng(7)
        for trial in range(10000):
            n = int(rng.integers(2, 13))
            labels = rng.integers(0, 3, n)
            _, labels = np.unique(labels, return_inverse=True)
            partition = Partition(tuple(int(m) for m in labels))
            entries = random_entries(n, int(rng.integers(1, n * n + 1)), rng)
            q = q_score(entries, partition)
            assert -0.5 <= q < 1.0
            if trial < 1000:
                entries10 = random_entries(10, int(rng.integers(1, 60)), rng)
                labels10 = [int(m) for m in rng.permutation([0] * 4 + [1] * 3 + [2] * 3)]
                expected = brute_force_q(entries10, labels10)
                assert q_score(entries10, Partition(tuple(labels10))) == pytest.approx(expected, abs=1e-12)


def experiment(name, tmp_path):
    spec = load_spec(name)
    return run_experiment(spec, tmp_path / name, workers=os.cpu_count() or 1, trials=20)


def comparison(result, text, metric):
    table = result.comparisons
    row = table[(table["comparison"] == text) & (table["metric"] == metric)]
    return row.iloc[0]


def treatment_mean(result, name, metric):
    summary = result.summary
    return float(summary[(summary["treatment"] == name) & (summary["metric"] == metric)]["mean"].iloc[0])


@pytest.fixture(scope="module")
def crossover_result(tmp_path_factory):
    return experiment("crossover", tmp_path_factory.mktemp("acceptance"))


@pytest.fixture(scope="module")
def dynamic_static_result(tmp_path_factory):
    return experiment("dynamic_static", tmp_path_factory.mktemp("acceptance"))


# mean final best Q per crossover treatment over 40 full-scale trials
REFERENCE_Q = {"none": 0.1961, "horizontal": 0.2919, "diagonal": 0.3386}
Q_BAND = 0.12


class TestExperiments:
    def test_diagonal_crossover_is_more_modular(self, crossover_result):
        result = crossover_result
        assert result.failures == 0
        assert treatment_mean(result, "diagonal", "best_q") > treatment_mean(result, "none", "best_q")
        assert comparison(result, "none < diagonal", "best_q")["p_value"] < 0.05

    @pytest.mark.parametrize("treatment", sorted(REFERENCE_Q))
    def test_crossover_q_near_reference(self, crossover_result, treatment):
        mean_q = treatment_mean(crossover_result, treatment, "best_q")
        assert abs(mean_q - REFERENCE_Q[treatment]) <= Q_BAND

    def test_elites_reduce_modularity(self, tmp_path):
        result = experiment("elitism", tmp_path)
        assert comparison(result, "elite10 < elite0", "best_q")["p_value"] < 0.05

    def test_dynamic_beats_static(self, dynamic_static_result):
        result = dynamic_static_result
        assert comparison(result, "static < dynamic", "best_fitness")["p_value"] < 0.05
        assert (result.results["best_fitness"] <= fitness_ceiling() + 1e-12).all()


class TestTrimming:
    def test_trim_often_improves_least_modular_of_fittest(self, dynamic_static_result, tmp_path):
        records = load_records(dynamic_static_result.out_dir / "dynamic")
        assert len(records) >= 20
        report = trim_analysis(records, tmp_path)
        assert len(report.results) == len(records)
        assert report.improvement_fraction >= 0.35

    def test_lattice_endpoints_match_direct_evaluation(self, dynamic_static_result):
        record = load_records(dynamic_static_result.out_dir / "dynamic")[0]
        genome = extract_dominance(record).least_modular_of_fittest.genome
        partition = record.config.resolved_partition()
        sets = analysis_sets(record, analysis_rng(record, "paths"), 200)
        lattice = removal_paths(genome, partition, sets, rng=np.random.default_rng(0), orders=20)
        direct = evaluate_genomes(np.stack([genome.entries, trim_inter_module(genome, partition).entries]), sets)
        assert lattice.empty_fitness == pytest.approx(direct[0], abs=1e-15)
        assert lattice.full_fitness == pytest.approx(direct[1], abs=1e-15)


class TestPerformance:
    def test_default_trial_within_ten_minutes(self):
        started = time.perf_counter()
        record = run_trial(load_config(), seed=11)
        elapsed = time.perf_counter() - started
        assert len(record.rows) == 2001
        assert elapsed <= 600
