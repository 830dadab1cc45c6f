"""A complete evolutionary trial and its record."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Callable, Dict, List, Optional

import numpy as np

from grnevo.evolution.population import (
    STREAM_NAMES,
    Individual,
    Streams,
    advance_generation,
    evaluate_generation,
    init_population,
)
from grnevo.evolution.schedule import TargetSchedule
from grnevo.fitness.perturbation import PerturbationSet
from grnevo.logging.run_events import RunEventLog
from grnevo.modularity.partition import Partition, derive_partition
from grnevo.utils.seeding import stream_seeds
from grnevo.utils.timing import PhaseTimer

if TYPE_CHECKING:
    from grnevo.config import RunConfig

logger = logging.getLogger(__name__)

TRACE_COLUMNS = ("generation", "best_fitness", "mean_fitness", "best_q", "mean_q")


@dataclass(frozen=True)
class GenerationRow:
    generation: int
    best_fitness: float
    mean_fitness: float
    best_q: Optional[float]
    mean_q: Optional[float]

    def as_tuple(self):
        return (self.generation, self.best_fitness, self.mean_fitness, self.best_q, self.mean_q)


@dataclass
class GenerationExtremes:
    """The two dominance candidates of one evaluated generation.

    ``most_modular`` has maximal Q (ties: fittest); ``fittest`` has maximal
    fitness (ties: least modular). An undefined Q ranks below every number.
    """

    generation: int
    most_modular: Individual
    fittest: Individual


def _q_rank(q: Optional[float]) -> float:
    return -math.inf if q is None else q


def modularity_key(ind: Individual):
    return (_q_rank(ind.q_score), ind.fitness)


def fitness_key(ind: Individual):
    return (ind.fitness, -_q_rank(ind.q_score))


def generation_extremes(generation: int, population: List[Individual]) -> GenerationExtremes:
    most = max(population, key=modularity_key)
    best = max(population, key=fitness_key)
    return GenerationExtremes(
        generation,
        Individual(most.genome, most.fitness, most.q_score),
        Individual(best.genome, best.fitness, best.q_score),
    )


@dataclass
class DominanceTracker:
    """Keeps the dominance candidates of every generation inside ``[start, end]``."""

    start: int
    end: int
    extremes: List[GenerationExtremes] = field(default_factory=list)

    def observe(self, generation: int, population: List[Individual]) -> None:
        if self.start <= generation <= self.end:
            self.extremes.append(generation_extremes(generation, population))


def summarize_generation(generation: int, population: List[Individual]) -> GenerationRow:
    fitness = np.array([ind.fitness for ind in population], dtype=np.float64)
    qs = np.array([ind.q_score for ind in population if ind.q_score is not None], dtype=np.float64)
    return GenerationRow(
        generation=generation,
        best_fitness=float(fitness.max()),
        mean_fitness=float(fitness.mean()),
        best_q=float(qs.max()) if qs.size else None,
        mean_q=float(qs.mean()) if qs.size else None,
    )


@dataclass
class TrialRecord:
    config: "RunConfig"
    seed: int
    rows: List[GenerationRow] = field(default_factory=list)
    final_population: List[Individual] = field(default_factory=list)
    history: List[GenerationExtremes] = field(default_factory=list)
    final_sets: List[PerturbationSet] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)
    trial_id: str = "trial"

    @property
    def wall_time(self) -> float:
        return sum(self.timings.values())

    @property
    def final_row(self) -> GenerationRow:
        return self.rows[-1]

    def fittest(self) -> Individual:
        return max(self.final_population, key=fitness_key)


def _partition_for(cfg: "RunConfig", schedule: TargetSchedule) -> Partition:
    if cfg.partition is not None:
        return Partition(tuple(cfg.partition))
    return derive_partition(schedule)


def run_trial(
    cfg: "RunConfig",
    schedule: Optional[TargetSchedule] = None,
    seed: Optional[int] = None,
    on_row: Optional[Callable[[GenerationRow], None]] = None,
    events: Optional[RunEventLog] = None,
    trial_id: str = "trial",
) -> TrialRecord:
    """Evolve from generation 0 through ``cfg.max_generation``.

    The record is a pure function of ``(cfg, schedule, seed)``; ``on_row`` is
    called after each generation is evaluated so traces can be streamed.
    """
    schedule = schedule or cfg.schedule()
    seed = cfg.seed if seed is None else seed
    partition = _partition_for(cfg, schedule)
    streams = Streams.from_seeds(stream_seeds(seed, STREAM_NAMES))
    ctx = cfg.fitness_context()
    timer = PhaseTimer()
    record = TrialRecord(config=cfg, seed=seed, trial_id=trial_id)
    tracker = DominanceTracker(*cfg.resolved_dominance_range())

    def observe(generation: int, population: List[Individual]) -> None:
        row = summarize_generation(generation, population)
        record.rows.append(row)
        tracker.observe(generation, population)
        if on_row is not None:
            on_row(row)

    with timer.phase("init"):
        ctx.initialize(schedule, streams["perturbation"])
        population = init_population(cfg, schedule.n, streams["init"])

    logger.info(
        "Trial %s: seed=%d n=%d pop=%d generations=%d mode=%s crossover=%s",
        trial_id, seed, schedule.n, cfg.population_size, cfg.max_generation,
        cfg.fitness_mode.value, cfg.crossover_type.value,
    )
    for generation in range(cfg.max_generation):
        with timer.phase("evolve"):
            nxt = advance_generation(
                population, cfg, schedule, generation, ctx, partition, streams, events
            )
        observe(generation, population)
        population = nxt

    with timer.phase("evolve"):
        evaluate_generation(
            population, schedule, cfg.max_generation, ctx, partition,
            streams["perturbation"], cfg.edge_collapse.value, events,
        )
    observe(cfg.max_generation, population)

    record.final_population = population
    record.history = tracker.extremes
    record.final_sets = ctx.active_sets()
    record.timings = timer.rounded()
    final = record.final_row
    logger.info(
        "Trial %s done: best_fitness=%.4f best_q=%s in %.1fs",
        trial_id, final.best_fitness,
        "n/a" if final.best_q is None else f"{final.best_q:.4f}", timer.total,
    )
    return record
