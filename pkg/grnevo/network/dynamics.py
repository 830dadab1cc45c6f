"""Boolean dynamics of gene regulatory networks.

Each gene's next state is the sign of its summed regulatory input:
``s'_i = sign(sum_j a_ji * s_j)`` with ``sign(x) = +1 if x > 0 else -1``.
A trajectory is resolved once it hits a single-state fixed point within the
step budget; cycles and slow convergence are unresolved.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from grnevo.network.genome import DimensionMismatchError, Genome, Pattern, check_dimensions

DEFAULT_MAX_STEPS = 20


@dataclass(frozen=True)
class AttractorResult:
    """Outcome of iterating a genome from an initial pattern.

    ``pattern`` is the fixed point when resolved and ``None`` otherwise.
    ``steps`` is the index t at which ``step(s_t) == s_t`` was observed, or
    ``max_steps`` when unresolved.
    """

    pattern: Optional[Pattern]
    steps: int

    @property
    def resolved(self) -> bool:
        return self.pattern is not None


def _sign(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0, 1, -1).astype(np.int8)


def step(genome: Genome, pattern: Pattern) -> Pattern:
    """Apply one synchronous update."""
    check_dimensions(genome, pattern)
    inputs = pattern.states.astype(np.int32) @ genome.entries.astype(np.int32)
    return Pattern(_sign(inputs))


def find_attractor(genome: Genome, initial: Pattern, max_steps: int = DEFAULT_MAX_STEPS) -> AttractorResult:
    """Iterate ``step`` until a fixed point or until ``max_steps`` applications."""
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")
    check_dimensions(genome, initial)
    final, resolved, steps = settle(genome.entries[None], initial.states[None, None], max_steps)
    if resolved[0, 0]:
        return AttractorResult(Pattern(final[0, 0]), int(steps[0, 0]))
    return AttractorResult(None, max_steps)


def hamming(a: Pattern, b: Pattern) -> int:
    if len(a) != len(b):
        raise DimensionMismatchError(f"Pattern lengths differ: {len(a)} vs {len(b)}")
    return int(np.count_nonzero(a.states != b.states))


def settle(
    genomes: np.ndarray,
    states: np.ndarray,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Batched attractor search.

    Args:
        genomes: (B, N, N) tensor of genome entries.
        states: (B, P, N) or broadcastable (1, P, N) initial states over {-1, +1}.
        max_steps: number of update applications allowed.

    Returns:
        final: (B, P, N) int8 states; the fixed point where resolved.
        resolved: (B, P) bool mask of trajectories that reached a fixed point.
        steps: (B, P) int index t of the fixed point, ``max_steps`` if unresolved.
    """
    genomes = np.asarray(genomes)
    if genomes.ndim != 3 or genomes.shape[1] != genomes.shape[2]:
        raise DimensionMismatchError(f"Expected (B, N, N) genomes, got {genomes.shape}")
    batch, n, _ = genomes.shape
    states = np.asarray(states)
    if states.ndim != 3 or states.shape[-1] != n:
        raise DimensionMismatchError(f"Expected (B, P, {n}) states, got {states.shape}")
    current = np.broadcast_to(states, (batch,) + states.shape[1:]).astype(np.float32)
    weights = genomes.astype(np.float32)

    resolved = np.zeros(current.shape[:2], dtype=bool)
    steps = np.full(current.shape[:2], max_steps, dtype=np.int32)
    for t in range(max_steps):
        nxt = np.where(np.matmul(current, weights) > 0, 1.0, -1.0).astype(np.float32)
        fixed = (nxt == current).all(axis=-1) & ~resolved
        steps[fixed] = t
        resolved |= fixed
        if resolved.all():
            break
        current = np.where(resolved[..., None], current, nxt)
    return current.astype(np.int8), resolved, steps


def distances_to(final: np.ndarray, resolved: np.ndarray, target: np.ndarray) -> np.ndarray:
    """Hamming distance of each settled state to ``target``; unresolved count as N."""
    n = final.shape[-1]
    dist = np.count_nonzero(final != np.asarray(target, dtype=np.int8), axis=-1)
    return np.where(resolved, dist, n)
