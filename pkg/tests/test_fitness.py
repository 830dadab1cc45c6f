"""
Tests for perturbation sampling, robustness fitness and the exact oracle.
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy.stats import binom

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from grnevo.evolution.schedule import TargetSchedule
from grnevo.fitness import (
    FitnessContext,
    FitnessMode,
    PerturbationSet,
    evaluate_genomes,
    exact_fitness_oracle,
    expected_gamma,
    fitness_ceiling,
    fitness_multi_target,
    fitness_single_target,
    gamma,
    load_sets,
    sample_perturbations,
    save_sets,
)
from grnevo.network import Genome, Pattern

TARGET_1 = Pattern.from_string("+-+-+-+-+-")
TARGET_2 = Pattern.from_string("+-+-++-+-+")


def identity_binomial_fitness(n: int, rate: float) -> float:
    """Closed form for the identity genome: D equals the flip count."""
    k = np.arange(n + 1)
    mean_gamma = float(np.sum(binom.pmf(k, n, rate) * (1 - k / n) ** 5))
    return 1 - math.exp(-3 * mean_gamma)


def hopfield_genome(*targets: Pattern) -> Genome:
    """Sign of the summed outer products; every stored target is a fixed point."""
    weights = sum(np.outer(t.states, t.states).astype(np.int64) for t in targets)
    return Genome(np.sign(weights))


class TestPerturbations:
    def test_rate_zero_copies_target(self):
        pset = sample_perturbations(TARGET_1, 50, 0.0, np.random.default_rng(0))
        assert (pset.samples == TARGET_1.states).all()

    def test_rate_one_negates_target(self):
        pset = sample_perturbations(TARGET_1, 50, 1.0, np.random.default_rng(0))
        assert (pset.samples == -TARGET_1.states).all()

    def test_mean_flip_count(self):
        pset = sample_perturbations(TARGET_1, 10000, 0.15, np.random.default_rng(1))
        sigma = math.sqrt(10 * 0.15 * 0.85 / 10000)
        assert abs(pset.flips().mean() - 1.5) < 4 * sigma

    def test_same_seed_same_samples(self):
        a = sample_perturbations(TARGET_1, 20, 0.15, np.random.default_rng(9))
        b = sample_perturbations(TARGET_1, 20, 0.15, np.random.default_rng(9))
        assert np.array_equal(a.samples, b.samples)

    def test_rejects_bad_count(self):
        with pytest.raises(ValueError):
            sample_perturbations(TARGET_1, 0, 0.15, np.random.default_rng(0))

    def test_sets_file(self, tmp_path):
        rng = np.random.default_rng(2)
        sets = [sample_perturbations(t, 7, 0.15, rng) for t in (TARGET_1, TARGET_2)]
        loaded = load_sets(save_sets(sets, tmp_path / "sets.txt"))
        assert len(loaded) == 2
        assert loaded[1].target == TARGET_2
        assert np.array_equal(loaded[0].samples, sets[0].samples)


class TestGamma:
    def test_attractor_on_target(self):
        assert gamma(Genome.identity(10), TARGET_1, TARGET_1) == 1.0

    def test_unresolved_scores_zero(self):
        entries = np.zeros((2, 2), dtype=np.int8)
        entries[0, 1] = entries[1, 0] = 1
        assert gamma(Genome(entries), Pattern.of([1, -1]), Pattern.of([1, -1])) == 0.0

    def test_half_distance(self):
        perturbed = Pattern(np.concatenate([TARGET_1.states[:5], -TARGET_1.states[5:]]))
        assert gamma(Genome.identity(10), perturbed, TARGET_1) == pytest.approx(0.03125)


class TestFitness:
    def test_ceiling(self):
        assert fitness_ceiling() == pytest.approx(0.950213, abs=1e-6)

    def test_perfect_recovery_hits_ceiling(self):
        drawn = sample_perturbations(TARGET_1, 200, 0.15, np.random.default_rng(0))
        # fewer than N/2 flips fall back onto the stored pattern in one step
        close = drawn.samples[drawn.flips() < 5]
        pset = PerturbationSet(TARGET_1, close, 0.15)
        value = fitness_single_target(hopfield_genome(TARGET_1), pset)
        assert value == pytest.approx(1 - math.exp(-3), abs=1e-9)

    def test_never_recovering_scores_zero(self):
        pset = sample_perturbations(TARGET_1, 50, 0.15, np.random.default_rng(0))
        # s -> -s is a two-cycle from every start state
        assert fitness_single_target(Genome(-np.eye(10, dtype=np.int8)), pset) == 0.0

    def test_identity_matches_binomial_sum(self):
        pset = sample_perturbations(TARGET_1, 20000, 0.15, np.random.default_rng(4))
        gammas = (1 - pset.flips() / 10) ** 5
        expected = identity_binomial_fitness(10, 0.15)
        estimate = fitness_single_target(Genome.identity(10), pset)
        # delta method on 1 - exp(-3 x)
        sigma = 3 * math.exp(-3 * gammas.mean()) * gammas.std() / math.sqrt(pset.size)
        assert abs(estimate - expected) < 4 * sigma

    def test_batch_matches_single(self):
        rng = np.random.default_rng(5)
        genomes = rng.integers(-1, 2, size=(6, 10, 10)).astype(np.int8)
        sets = [sample_perturbations(t, 40, 0.15, rng) for t in (TARGET_1, TARGET_2)]
        batch = evaluate_genomes(genomes, sets, chunk=4)
        for b in range(6):
            single = np.mean([fitness_single_target(Genome(genomes[b]), s) for s in sets])
            assert batch[b] == pytest.approx(single, abs=1e-12)


class TestFitnessContext:
    def test_multi_target_is_mean(self):
        schedule = TargetSchedule.reference()
        ctx = FitnessContext(mode=FitnessMode.DYNAMIC, perturbation_count=30)
        rng = np.random.default_rng(0)
        ctx.initialize(schedule, rng)
        ctx.refresh(600, schedule, rng)
        g = Genome.identity(10)
        per_target = [fitness_single_target(g, s) for s in ctx.active_sets()]
        assert len(per_target) == 2
        assert fitness_multi_target(g, ctx) == pytest.approx(np.mean(per_target), abs=1e-12)

    def test_one_target_before_switch(self):
        schedule = TargetSchedule.reference()
        ctx = FitnessContext(perturbation_count=10)
        rng = np.random.default_rng(0)
        ctx.initialize(schedule, rng)
        assert ctx.refresh(0, schedule, rng) == [0]
        assert ctx.refresh(499, schedule, rng) == []
        assert ctx.refresh(500, schedule, rng) == [1]
        assert len(ctx.active_sets()) == 2

    def test_no_active_targets_rejected(self):
        with pytest.raises(ValueError):
            FitnessContext().active_sets()

    def test_static_sets_are_frozen(self):
        schedule = TargetSchedule.reference()
        ctx = FitnessContext(mode=FitnessMode.STATIC, perturbation_count=10, static_perturbation_count=25)
        rng = np.random.default_rng(0)
        ctx.initialize(schedule, rng)
        ctx.refresh(0, schedule, rng)
        first = ctx.active_sets()[0]
        ctx.refresh(1, schedule, rng)
        assert ctx.active_sets()[0] is first
        assert first.size == 25

    def test_dynamic_sets_are_redrawn(self):
        schedule = TargetSchedule.reference()
        ctx = FitnessContext(mode=FitnessMode.DYNAMIC, perturbation_count=50)
        rng = np.random.default_rng(0)
        ctx.initialize(schedule, rng)
        ctx.refresh(0, schedule, rng)
        first = ctx.active_sets()[0].samples
        ctx.refresh(1, schedule, rng)
        assert not np.array_equal(first, ctx.active_sets()[0].samples)

    def test_genome_holding_both_targets_hits_ceiling(self):
        schedule = TargetSchedule.reference()
        ctx = FitnessContext(perturbation_count=5, rate=0.0)
        rng = np.random.default_rng(0)
        ctx.initialize(schedule, rng)
        ctx.refresh(500, schedule, rng)
        g = hopfield_genome(TARGET_1, TARGET_2)
        assert fitness_multi_target(g, ctx) == pytest.approx(fitness_ceiling(), abs=1e-12)


class TestOracle:
    def test_identity_matches_closed_form(self):
        exact = exact_fitness_oracle(Genome.identity(10), TARGET_1, 0.15)
        assert exact == pytest.approx(identity_binomial_fitness(10, 0.15), abs=1e-12)

    def test_rate_zero_is_the_target_itself(self):
        g = Genome(np.random.default_rng(6).integers(-1, 2, size=(8, 8)))
        target = Pattern.from_string("+-+--+-+")
        expected = 1 - math.exp(-3 * gamma(g, target, target))
        assert exact_fitness_oracle(g, target, 0.0) == pytest.approx(expected, abs=1e-12)

    def test_rejects_large_networks(self):
        with pytest.raises(ValueError):
            expected_gamma(Genome.identity(21), Pattern(np.ones(21, dtype=np.int8)), 0.1)

    def test_monte_carlo_converges(self):
        rng = np.random.default_rng(7)
        g = Genome(rng.integers(-1, 2, size=(6, 6)))
        target = Pattern.from_string("+--+-+")
        exact_gamma = expected_gamma(g, target, 0.15)
        pset = sample_perturbations(target, 100000, 0.15, rng)
        from grnevo.fitness import gamma_values

        sample = gamma_values(g.entries[None], pset)[0]
        sigma = sample.std() / math.sqrt(pset.size)
        assert abs(sample.mean() - exact_gamma) <= 4 * sigma + 1e-12
