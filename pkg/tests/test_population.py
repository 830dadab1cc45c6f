"""
Tests for population assembly and whole trials.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from grnevo.config import RunConfig
from grnevo.evolution import run_trial
from grnevo.evolution.operators import random_entries
from grnevo.evolution.population import (
    STREAM_NAMES,
    Individual,
    Streams,
    breed,
    elite_indices,
    init_population,
)
from grnevo.fitness.evaluator import fitness_ceiling
from grnevo.logging import RunEventLog, RunEventType
from grnevo.network import Genome
from grnevo.utils.seeding import stream_seeds


def small_config(**overrides):
    values = dict(
        population_size=12,
        max_generation=6,
        target_generations=[0, 3],
        perturbation_count=10,
        seed=5,
    )
    values.update(overrides)
    return RunConfig(**values)


def scored_population(size, seed=0):
    rng = np.random.default_rng(seed)
    return [
        Individual(Genome(random_entries(10, 20, rng)), fitness=k / size)
        for k in range(size)
    ]


def streams(seed=1):
    return Streams.from_seeds(stream_seeds(seed, STREAM_NAMES))


class TestInit:
    def test_edge_counts(self):
        cfg = small_config()
        pop = init_population(cfg, 10, np.random.default_rng(0))
        assert len(pop) == 12
        assert all(ind.edges == 20 for ind in pop)

    def test_deterministic(self):
        cfg = small_config()
        a = init_population(cfg, 10, np.random.default_rng(3))
        b = init_population(cfg, 10, np.random.default_rng(3))
        assert [i.genome for i in a] == [i.genome for i in b]

    def test_founder_mode(self):
        cfg = small_config(init_mode="founder")
        pop = init_population(cfg, 10, np.random.default_rng(0))
        assert len({ind.genome for ind in pop}) == 1

    def test_edge_size_too_large(self):
        cfg = small_config(edge_size=100)
        with pytest.raises(ValueError):
            init_population(cfg, 5, np.random.default_rng(0))


class TestBreed:
    def test_elites_copied(self):
        pop = scored_population(10)
        cfg = small_config(population_size=10, elite_size=2)
        nxt = breed(pop, cfg, cfg.resolved_partition(), streams())
        assert len(nxt) == 10
        assert nxt[0].genome == pop[9].genome
        assert nxt[1].genome == pop[8].genome

    def test_elite_ties_keep_order(self):
        pop = scored_population(4)
        for ind in pop:
            ind.fitness = 0.5
        assert elite_indices(pop, 2) == [0, 1]

    def test_no_variation_resamples_parents(self):
        pop = scored_population(10)
        cfg = small_config(population_size=10, mutation_rate=0.0, crossover_type="none")
        nxt = breed(pop, cfg, cfg.resolved_partition(), streams())
        parents = {ind.genome for ind in pop}
        assert all(ind.genome in parents for ind in nxt)

    @pytest.mark.parametrize("crossover", ["horizontal", "diagonal"])
    def test_sizes_with_crossover(self, crossover):
        pop = scored_population(11)
        cfg = small_config(
            population_size=11, elite_size=1, reproduction_rate=0.5, crossover_type=crossover
        )
        nxt = breed(pop, cfg, cfg.resolved_partition(), streams())
        assert len(nxt) == 11
        assert all(np.isnan(ind.fitness) for ind in nxt)

    def test_wrong_size_rejected(self):
        cfg = small_config(population_size=10)
        with pytest.raises(ValueError):
            breed(scored_population(9), cfg, cfg.resolved_partition(), streams())


class TestRunTrial:
    def test_rows_cover_every_generation(self):
        record = run_trial(small_config())
        assert [row.generation for row in record.rows] == list(range(7))
        assert len(record.final_population) == 12

    def test_fitness_within_bounds(self):
        record = run_trial(small_config())
        ceiling = fitness_ceiling()
        for row in record.rows:
            assert 0.0 <= row.mean_fitness <= row.best_fitness + 1e-12
            assert row.best_fitness <= ceiling + 1e-12

    def test_deterministic(self):
        first = run_trial(small_config())
        second = run_trial(small_config())
        assert [r.as_tuple() for r in first.rows] == [r.as_tuple() for r in second.rows]
        assert [i.genome for i in first.final_population] == [
            i.genome for i in second.final_population
        ]

    def test_history_covers_last_epoch(self):
        record = run_trial(small_config())
        assert [ext.generation for ext in record.history] == [3, 4, 5, 6]

    def test_target_introductions_logged(self):
        events = RunEventLog()
        record = run_trial(small_config(), events=events)
        assert events.count(RunEventType.TARGET_INTRODUCED) == 2
        assert len(record.final_sets) == 2

    def test_zero_generations(self):
        record = run_trial(small_config(max_generation=0))
        assert [row.generation for row in record.rows] == [0]
        assert len(record.history) == 1
        assert len(record.final_sets) == 1

    def test_static_mode(self):
        record = run_trial(small_config(fitness_mode="static"))
        assert len(record.rows) == 7
        assert record.final_sets[0].size == 10

    def test_streamed_rows(self):
        seen = []
        record = run_trial(small_config(), on_row=seen.append)
        assert seen == record.rows

    def test_fittest(self):
        record = run_trial(small_config())
        assert record.fittest().fitness == record.final_row.best_fitness
