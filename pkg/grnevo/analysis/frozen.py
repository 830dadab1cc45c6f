"""Frozen evaluation sets shared by every post-hoc comparison of one genome."""

from __future__ import annotations

from typing import List, Sequence

import numpy as np

from grnevo.fitness.perturbation import PerturbationSet, sample_perturbations
from grnevo.network.genome import Pattern

ANALYSIS_PERTURBATIONS = 1000


def fresh_sets(
    targets: Sequence[Pattern],
    rng: np.random.Generator,
    p_count: int = ANALYSIS_PERTURBATIONS,
    rate: float = 0.15,
) -> List[PerturbationSet]:
    """One newly drawn set per target; reuse the list for every compared genome."""
    return [sample_perturbations(target, p_count, rate, rng) for target in targets]
