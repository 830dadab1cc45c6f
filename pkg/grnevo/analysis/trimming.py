"""Inter-module edge removal: trimming, removal lattices and trim reports."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from grnevo.fitness.evaluator import evaluate_genomes
from grnevo.fitness.perturbation import PerturbationSet
from grnevo.modularity.partition import Partition
from grnevo.modularity.qscore import EdgeCollapse, q_score
from grnevo.network.dynamics import DEFAULT_MAX_STEPS
from grnevo.network.genome import Genome

logger = logging.getLogger(__name__)

LATTICE_CAP = 1 << 16
SAMPLED_ORDERS = 1000
LATTICE_COLUMNS = ["removed_mask", "removed_count", "fitness"]
PATH_COLUMNS = ["path_id", "step", "removed_mask", "removed_count", "fitness"]
TRIM_COLUMNS = [
    "trial_id", "fitness_before", "fitness_after", "q_before", "q_after",
    "edges_before", "edges_after", "improved",
]


def inter_module_edges(genome: Genome, partition: Partition) -> List[Tuple[int, int]]:
    """Nonzero entries ``(j, i)`` joining different modules, in row-major order."""
    partition.check_covers(genome.n)
    across = (genome.entries != 0) & ~partition.same_module_mask()
    return [(int(j), int(i)) for j, i in zip(*np.nonzero(across))]


def trim_inter_module(genome: Genome, partition: Partition) -> Genome:
    partition.check_covers(genome.n)
    return genome.with_entries(np.where(partition.same_module_mask(), genome.entries, 0))


def _removal_stack(genome: Genome, edges: Sequence[Tuple[int, int]], removed: np.ndarray) -> np.ndarray:
    """Genome copies with edge ``b`` zeroed wherever ``removed[:, b]`` is set."""
    stack = np.repeat(genome.entries[None], len(removed), axis=0).copy()
    for bit, (j, i) in enumerate(edges):
        stack[removed[:, bit], j, i] = 0
    return stack


def _mask_bits(masks: np.ndarray, k: int) -> np.ndarray:
    return ((masks[:, None] >> np.arange(k, dtype=np.int64)) & 1).astype(bool)


@dataclass
class RemovalLattice:
    """Fitness over subsets of removed inter-module edges.

    When every subset fits under the cap ``paths`` is empty and ``values``
    covers all masks; otherwise ``paths`` holds sampled removal orders as
    ``(path_id, step, mask)`` and ``values`` the distinct masks they visit.
    """

    inter_edges: List[Tuple[int, int]]
    values: Dict[int, float]
    paths: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.inter_edges)

    @property
    def exhaustive(self) -> bool:
        return not self.paths

    @property
    def full_mask(self) -> int:
        return (1 << self.k) - 1

    @property
    def empty_fitness(self) -> float:
        return self.values[0]

    @property
    def full_fitness(self) -> float:
        return self.values[self.full_mask]

    def best(self) -> Tuple[int, float]:
        mask = max(sorted(self.values), key=lambda m: self.values[m])
        return mask, self.values[mask]

    def to_frame(self) -> pd.DataFrame:
        masks = sorted(self.values)
        return pd.DataFrame(
            {
                "removed_mask": masks,
                "removed_count": [bin(m).count("1") for m in masks],
                "fitness": [self.values[m] for m in masks],
            },
            columns=LATTICE_COLUMNS,
        )

    def paths_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                (path_id, step, mask, bin(mask).count("1"), self.values[mask])
                for path_id, step, mask in self.paths
            ],
            columns=PATH_COLUMNS,
        )


def removal_paths(
    genome: Genome,
    partition: Partition,
    sets: Sequence[PerturbationSet],
    cap: int = LATTICE_CAP,
    rng: Optional[np.random.Generator] = None,
    orders: int = SAMPLED_ORDERS,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> RemovalLattice:
    """Evaluate removal subsets of the inter-module edges on frozen sets.

    Bit ``b`` of a mask stands for ``inter_edges[b]``. With ``2**k <= cap``
    every subset is evaluated; otherwise ``orders`` random removal orders are
    walked one edge at a time from the intact genome to full removal.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    edges = inter_module_edges(genome, partition)
    k = len(edges)
    paths: List[Tuple[int, int, int]] = []
    if (1 << k) <= cap:
        codes = np.arange(1 << k, dtype=np.int64)
        masks = [int(m) for m in codes]
        removed = _mask_bits(codes, k)
    else:
        if rng is None:
            raise ValueError(f"{k} inter-module edges exceed the lattice cap; a random generator is required")
        # masks are unbounded Python ints here; rows hold the same subsets as bool vectors
        rows: Dict[int, np.ndarray] = {}
        for path_id in range(orders):
            mask = 0
            row = np.zeros(k, dtype=bool)
            rows.setdefault(mask, row.copy())
            paths.append((path_id, 0, mask))
            for step, bit in enumerate(rng.permutation(k), start=1):
                bit = int(bit)
                mask |= 1 << bit
                row[bit] = True
                rows.setdefault(mask, row.copy())
                paths.append((path_id, step, mask))
        masks = sorted(rows)
        removed = np.stack([rows[m] for m in masks])

    fitness = evaluate_genomes(_removal_stack(genome, edges, removed), sets, max_steps)
    values = {m: float(f) for m, f in zip(masks, fitness)}
    logger.debug("Removal lattice: k=%d, %d points, sampled=%s", k, len(values), bool(paths))
    return RemovalLattice(inter_edges=edges, values=values, paths=paths)


@dataclass(frozen=True)
class TrimResult:
    trial_id: str
    fitness_before: float
    fitness_after: float
    q_before: Optional[float]
    q_after: Optional[float]
    edges_before: int
    edges_after: int

    @property
    def improved(self) -> bool:
        return self.fitness_after > self.fitness_before


def trim_genome(
    genome: Genome,
    partition: Partition,
    sets: Sequence[PerturbationSet],
    trial_id: str = "trial",
    edge_collapse: Union[EdgeCollapse, str] = EdgeCollapse.UNION,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> TrimResult:
    """Compare a genome with its trimmed copy on the same frozen sets."""
    trimmed = trim_inter_module(genome, partition)
    before, after = evaluate_genomes(np.stack([genome.entries, trimmed.entries]), sets, max_steps)
    return TrimResult(
        trial_id=trial_id,
        fitness_before=float(before),
        fitness_after=float(after),
        q_before=q_score(genome, partition, edge_collapse),
        q_after=q_score(trimmed, partition, edge_collapse),
        edges_before=genome.edge_count,
        edges_after=trimmed.edge_count,
    )


@dataclass
class TrimReport:
    results: List[TrimResult]

    @property
    def improvement_fraction(self) -> float:
        if not self.results:
            return float("nan")
        return sum(r.improved for r in self.results) / len(self.results)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                (r.trial_id, r.fitness_before, r.fitness_after, r.q_before, r.q_after,
                 r.edges_before, r.edges_after, r.improved)
                for r in self.results
            ],
            columns=TRIM_COLUMNS,
        )


def trim_report(results: Sequence[TrimResult]) -> TrimReport:
    report = TrimReport(list(results))
    logger.info(
        "Trimming improved %d of %d genomes",
        sum(r.improved for r in report.results), len(report.results),
    )
    return report


def write_lattice(lattice: RemovalLattice, out_dir: Union[str, Path]) -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / "lattice.csv"
    lattice.to_frame().to_csv(path, index=False)
    if lattice.paths:
        lattice.paths_frame().to_csv(out_dir / "paths.csv", index=False)
    return path
