"""Genetic operators on regulatory matrices: biased mutation and crossover."""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from grnevo.modularity.partition import Partition
from grnevo.network.genome import Genome


def loss_probability(regulators: int, n: int) -> float:
    """Probability that a mutating gene loses (rather than gains) a regulator.

    ``p(u) = 4 r_u / (4 r_u + N - r_u)``; 0 for an unregulated gene and 1 for
    a gene regulated by every gene.
    """
    if not 0 <= regulators <= n:
        raise ValueError(f"regulator count {regulators} outside [0, {n}]")
    if regulators == 0:
        return 0.0
    return 4.0 * regulators / (4.0 * regulators + n - regulators)


def mutate_entries(entries: np.ndarray, mu: float, rng: np.random.Generator) -> np.ndarray:
    """Return a mutated copy of a raw matrix; at most one change per column."""
    if not 0.0 <= mu <= 1.0:
        raise ValueError(f"mutation rate must lie in [0, 1], got {mu}")
    out = np.array(entries, dtype=np.int8, copy=True)
    n = out.shape[0]
    hits = np.flatnonzero(rng.random(n) < mu)
    for gene in hits:
        column = out[:, gene]
        present = np.flatnonzero(column)
        if rng.random() < loss_probability(present.size, n):
            column[present[rng.integers(present.size)]] = 0
        else:
            absent = np.flatnonzero(column == 0)
            column[absent[rng.integers(absent.size)]] = 1 if rng.random() < 0.5 else -1
    return out


def mutate(genome: Genome, mu: float, rng: np.random.Generator) -> Genome:
    """Per-gene biased gain/loss mutation."""
    return Genome(mutate_entries(genome.entries, mu, rng))


def crossover_horizontal(
    a: Genome,
    b: Genome,
    i: Optional[int] = None,
    rng: Optional[np.random.Generator] = None,
) -> Tuple[Genome, Genome]:
    """Exchange matrix rows ``i..n-1`` between parents.

    ``i`` is drawn uniformly from 1..n-1 when not supplied.
    """
    if a.n != b.n:
        raise ValueError(f"Parents differ in size: {a.n} vs {b.n}")
    n = a.n
    if i is None:
        if rng is None:
            raise ValueError("Either a cut index or a random generator is required")
        i = int(rng.integers(1, n))
    if not 1 <= i <= n - 1:
        raise ValueError(f"Cut index {i} outside [1, {n - 1}]")
    child1 = np.concatenate([a.entries[:i], b.entries[i:]])
    child2 = np.concatenate([b.entries[:i], a.entries[i:]])
    return Genome(child1), Genome(child2)


def crossover_diagonal(a: Genome, b: Genome, partition: Partition) -> Tuple[Genome, Genome]:
    """Keep intra-module blocks and swap inter-module blocks between parents."""
    if a.n != b.n:
        raise ValueError(f"Parents differ in size: {a.n} vs {b.n}")
    partition.check_covers(a.n)
    same = partition.same_module_mask()
    child1 = np.where(same, a.entries, b.entries)
    child2 = np.where(same, b.entries, a.entries)
    return Genome(child1), Genome(child2)


def random_entries(n: int, edges: int, rng: np.random.Generator) -> np.ndarray:
    """Matrix with exactly ``edges`` nonzero cells at distinct random positions, signs +-1."""
    if not 0 <= edges <= n * n:
        raise ValueError(f"edge count {edges} outside [0, {n * n}]")
    entries = np.zeros(n * n, dtype=np.int8)
    cells = rng.choice(n * n, size=edges, replace=False)
    entries[cells] = np.where(rng.random(edges) < 0.5, 1, -1)
    return entries.reshape(n, n)
