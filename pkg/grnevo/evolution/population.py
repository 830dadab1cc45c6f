"""Population assembly: initialization, evaluation and one generation of breeding."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional

import numpy as np

from grnevo.evolution.operators import (
    crossover_diagonal,
    crossover_horizontal,
    mutate_entries,
    random_entries,
)
from grnevo.evolution.schedule import TargetSchedule
from grnevo.evolution.selection import select_indices
from grnevo.fitness.evaluator import FitnessContext
from grnevo.logging.run_events import RunEventLog, RunEventType
from grnevo.modularity.partition import Partition
from grnevo.modularity.qscore import q_score
from grnevo.network.genome import Genome, stack_genomes

if TYPE_CHECKING:
    from grnevo.config import RunConfig

logger = logging.getLogger(__name__)

STREAM_NAMES = ("init", "perturbation", "mutation", "selection", "crossover")


@dataclass
class Individual:
    """A genome with its evaluation for the current generation."""

    genome: Genome
    fitness: float = float("nan")
    q_score: Optional[float] = None

    def clone(self) -> "Individual":
        return Individual(self.genome)

    @property
    def edges(self) -> int:
        return self.genome.edge_count


@dataclass
class Streams:
    """Named random streams of one trial; each stream is consumed independently."""

    generators: Dict[str, np.random.Generator] = field(default_factory=dict)

    def __getitem__(self, name: str) -> np.random.Generator:
        return self.generators[name]

    @classmethod
    def from_seeds(cls, seeds: Dict[str, int]) -> "Streams":
        return cls({name: np.random.default_rng(seed) for name, seed in seeds.items()})


def init_population(cfg: "RunConfig", n: int, rng: np.random.Generator) -> List[Individual]:
    """Random genomes with exactly ``edge_size`` signed interactions each.

    In founder mode one such genome is drawn and cloned into every slot.
    """
    if cfg.edge_size > n * n:
        raise ValueError(f"edge_size {cfg.edge_size} exceeds n^2 = {n * n}")
    if cfg.init_mode.value == "founder":
        founder = Genome(random_entries(n, cfg.edge_size, rng))
        return [Individual(founder) for _ in range(cfg.population_size)]
    return [
        Individual(Genome(random_entries(n, cfg.edge_size, rng)))
        for _ in range(cfg.population_size)
    ]


def evaluate_population(
    population: List[Individual],
    ctx: FitnessContext,
    partition: Partition,
    edge_collapse: str = "union",
) -> None:
    """Score every individual in place against the context's frozen sets."""
    fitness = ctx.evaluate(stack_genomes([ind.genome for ind in population]))
    for ind, value in zip(population, fitness):
        ind.fitness = float(value)
        ind.q_score = q_score(ind.genome, partition, edge_collapse)


def evaluate_generation(
    population: List[Individual],
    schedule: TargetSchedule,
    generation: int,
    ctx: FitnessContext,
    partition: Partition,
    rng: np.random.Generator,
    edge_collapse: str = "union",
    events: Optional[RunEventLog] = None,
) -> None:
    """Refresh the active targets (resampling in dynamic mode) and evaluate."""
    introduced = ctx.refresh(generation, schedule, rng)
    if events is not None:
        for index in introduced:
            events.log(
                RunEventType.TARGET_INTRODUCED,
                f"target {index} active",
                generation=generation,
                target=schedule.targets[index].to_string(),
            )
    evaluate_population(population, ctx, partition, edge_collapse)


def elite_indices(population: List[Individual], count: int) -> List[int]:
    """Indices of the ``count`` fittest individuals; ties keep population order."""
    if count <= 0:
        return []
    fitness = np.array([ind.fitness for ind in population])
    return [int(i) for i in np.argsort(-fitness, kind="stable")[:count]]


def breed(
    population: List[Individual],
    cfg: "RunConfig",
    partition: Partition,
    streams: Streams,
    generation: Optional[int] = None,
    events: Optional[RunEventLog] = None,
) -> List[Individual]:
    """Assemble the next population from an evaluated one.

    Elites are copied verbatim; a ``reproduction_rate`` share of the remaining
    slots is filled with selected clones and the rest with crossover offspring
    of selected parent pairs; every non-elite member is then mutated.
    """
    size = cfg.population_size
    if len(population) != size:
        raise ValueError(f"Population has {len(population)} members, expected {size}")
    fitness = np.array([ind.fitness for ind in population], dtype=np.float64)
    scheme = cfg.selection_scheme()
    select_rng = streams["selection"]

    elites = [population[i].clone() for i in elite_indices(population, cfg.elite_size)]
    remaining = size - len(elites)
    if cfg.crossover_type.value == "none":
        clone_slots = remaining
    else:
        clone_slots = int(round(cfg.reproduction_rate * remaining))
    cross_slots = remaining - clone_slots

    offspring: List[Genome] = []
    for idx in select_indices(fitness, scheme, clone_slots, select_rng, events, generation):
        offspring.append(population[int(idx)].genome)

    pair_count = (cross_slots + 1) // 2
    parents = select_indices(fitness, scheme, 2 * pair_count, select_rng, events, generation)
    cross_rng = streams["crossover"]
    for k in range(pair_count):
        a = population[int(parents[2 * k])].genome
        b = population[int(parents[2 * k + 1])].genome
        if cfg.crossover_type.value == "horizontal":
            children = crossover_horizontal(a, b, cfg.crossover_point, cross_rng)
        else:
            children = crossover_diagonal(a, b, partition)
        offspring.extend(children[: cross_slots - 2 * k])

    mutation_rng = streams["mutation"]
    mutated = [
        Individual(Genome(mutate_entries(g.entries, cfg.mutation_rate, mutation_rng)))
        for g in offspring
    ]
    return elites + mutated


def advance_generation(
    population: List[Individual],
    cfg: "RunConfig",
    schedule: TargetSchedule,
    generation: int,
    ctx: FitnessContext,
    partition: Partition,
    streams: Streams,
    events: Optional[RunEventLog] = None,
) -> List[Individual]:
    """Evaluate ``population`` at ``generation`` and return the next population.

    The evaluated fitness and Q stay on the members of ``population``.
    """
    evaluate_generation(
        population, schedule, generation, ctx, partition,
        streams["perturbation"], cfg.edge_collapse.value, events,
    )
    return breed(population, cfg, partition, streams, generation, events)
