"""Exact expected fitness by enumerating every start state.

The Monte Carlo estimator averages gamma over random perturbations; its
expectation weights each of the 2^N patterns by the probability of drawing it
from the target. Used as a test oracle and by the ``oracle`` CLI command.
"""

from __future__ import annotations

import numpy as np

from grnevo.fitness.evaluator import FITNESS_SCALE, TRAJECTORY_EXPONENT, gamma_from_distance
from grnevo.network.dynamics import DEFAULT_MAX_STEPS, distances_to, settle
from grnevo.network.genome import Genome, Pattern, check_dimensions

MAX_ORACLE_GENES = 20
_CHUNK = 1 << 15


def _patterns(start: int, stop: int, n: int) -> np.ndarray:
    codes = np.arange(start, stop, dtype=np.int64)[:, None]
    bits = (codes >> np.arange(n, dtype=np.int64)) & 1
    return np.where(bits == 1, 1, -1).astype(np.int8)


def expected_gamma(
    genome: Genome,
    target: Pattern,
    rate: float,
    max_steps: int = DEFAULT_MAX_STEPS,
    exponent: int = TRAJECTORY_EXPONENT,
) -> float:
    check_dimensions(genome, target)
    n = genome.n
    if n > MAX_ORACLE_GENES:
        raise ValueError(f"Exact oracle supports n <= {MAX_ORACLE_GENES}, got {n}")
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    total = 0.0
    for start in range(0, 1 << n, _CHUNK):
        states = _patterns(start, min(start + _CHUNK, 1 << n), n)
        flipped = np.count_nonzero(states != target.states, axis=1)
        weights = rate ** flipped * (1.0 - rate) ** (n - flipped)
        live = weights > 0
        if not live.any():
            continue
        final, resolved, _ = settle(genome.entries[None], states[live][None], max_steps)
        dist = distances_to(final, resolved, target.states)[0]
        total += float(np.dot(weights[live], gamma_from_distance(dist, n, exponent)))
    return total


def exact_fitness_oracle(
    genome: Genome,
    target: Pattern,
    rate: float,
    max_steps: int = DEFAULT_MAX_STEPS,
    exponent: int = TRAJECTORY_EXPONENT,
    scale: float = FITNESS_SCALE,
) -> float:
    """Limit of ``fitness_single_target`` as the sample count grows."""
    return float(1.0 - np.exp(-scale * expected_gamma(genome, target, rate, max_steps, exponent)))
