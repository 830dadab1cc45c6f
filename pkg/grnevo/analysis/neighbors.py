"""Mutational neighborhood probes around evolved genomes."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from grnevo.evolution.operators import mutate_entries
from grnevo.fitness.evaluator import evaluate_genomes
from grnevo.fitness.perturbation import PerturbationSet
from grnevo.modularity.partition import Partition
from grnevo.modularity.qscore import EdgeCollapse, q_score
from grnevo.network.dynamics import DEFAULT_MAX_STEPS
from grnevo.network.genome import Genome

DEFAULT_NEIGHBORS = 499
NEIGHBOR_COLUMNS = ["neighbor_id", "fitness", "q"]


def _max_defined(values: Sequence[Optional[float]]) -> Optional[float]:
    defined = [v for v in values if v is not None]
    return max(defined) if defined else None


@dataclass
class NeighborProbe:
    """Fitness and Q of a genome (row 0) and its mutants (rows 1..)."""

    fitness: np.ndarray
    q: List[Optional[float]]

    @property
    def self_fitness(self) -> float:
        return float(self.fitness[0])

    @property
    def self_q(self) -> Optional[float]:
        return self.q[0]

    @property
    def max_fitness(self) -> float:
        return float(self.fitness.max())

    @property
    def max_q(self) -> Optional[float]:
        return _max_defined(self.q)

    @property
    def on_plateau(self) -> bool:
        return self.max_fitness == self.self_fitness

    def summary(self):
        return self.max_fitness, self.max_q, self.self_fitness, self.self_q

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {"neighbor_id": np.arange(self.fitness.size), "fitness": self.fitness, "q": self.q},
            columns=NEIGHBOR_COLUMNS,
        )


def neighbor_probe(
    genome: Genome,
    sets: Sequence[PerturbationSet],
    partition: Partition,
    rng: np.random.Generator,
    neighbor_count: int = DEFAULT_NEIGHBORS,
    mu: float = 0.05,
    edge_collapse: Union[EdgeCollapse, str] = EdgeCollapse.UNION,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> NeighborProbe:
    """Evaluate ``genome`` and ``neighbor_count`` single-pass mutants on frozen sets."""
    if neighbor_count < 1:
        raise ValueError(f"neighbor_count must be >= 1, got {neighbor_count}")
    stack = [genome.entries] + [
        mutate_entries(genome.entries, mu, rng) for _ in range(neighbor_count)
    ]
    fitness = evaluate_genomes(np.stack(stack), sets, max_steps)
    q = [q_score(entries, partition, edge_collapse) for entries in stack]
    return NeighborProbe(fitness=fitness, q=q)


def plateau_fraction(probes: Sequence[NeighborProbe]) -> float:
    """Share of probes whose best neighbor is no fitter than the genome itself."""
    if not probes:
        raise ValueError("No probes given")
    return sum(p.on_plateau for p in probes) / len(probes)


def write_neighbors(probe: NeighborProbe, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    probe.to_frame().to_csv(path, index=False)
    return path
