"""Parent selection: fitness-proportional and tournament."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional, Sequence

import numpy as np

from grnevo.logging.run_events import RunEventLog, RunEventType

if TYPE_CHECKING:
    from grnevo.evolution.population import Individual

logger = logging.getLogger(__name__)


class SelectionType(str, Enum):
    PROPORTIONAL = "proportional"
    TOURNAMENT = "tournament"


@dataclass(frozen=True)
class SelectionScheme:
    kind: SelectionType = SelectionType.PROPORTIONAL
    tournament_size: int = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", SelectionType(self.kind))
        if self.kind is SelectionType.TOURNAMENT and self.tournament_size < 1:
            raise ValueError(f"Tournament size must be >= 1, got {self.tournament_size}")

    @classmethod
    def proportional(cls) -> "SelectionScheme":
        return cls(SelectionType.PROPORTIONAL)

    @classmethod
    def tournament(cls, size: int) -> "SelectionScheme":
        return cls(SelectionType.TOURNAMENT, size)

    def label(self) -> str:
        if self.kind is SelectionType.TOURNAMENT:
            return f"tournament({self.tournament_size})"
        return "proportional"


def select_indices(
    fitness: np.ndarray,
    scheme: SelectionScheme,
    count: int,
    rng: np.random.Generator,
    events: Optional[RunEventLog] = None,
    generation: Optional[int] = None,
) -> np.ndarray:
    """Pick ``count`` population indices (with replacement)."""
    fitness = np.asarray(fitness, dtype=np.float64)
    size = fitness.shape[0]
    if size == 0:
        raise ValueError("Cannot select from an empty population")
    if count == 0:
        return np.empty(0, dtype=np.int64)

    if scheme.kind is SelectionType.PROPORTIONAL:
        if (fitness < 0).any():
            raise ValueError("Proportional selection requires non-negative fitness")
        total = fitness.sum()
        if total <= 0:
            if events is not None:
                events.log(
                    RunEventType.PROPORTIONAL_FALLBACK,
                    "all fitness values are zero; selecting uniformly",
                    generation=generation,
                )
            else:
                logger.warning("All fitness values are zero; selecting uniformly")
            return rng.integers(0, size, count)
        return rng.choice(size, size=count, p=fitness / total)

    picks = np.empty(count, dtype=np.int64)
    entrants = rng.integers(0, size, (count, scheme.tournament_size))
    for row, contenders in enumerate(entrants):
        scores = fitness[contenders]
        best = np.unique(contenders[scores == scores.max()])
        picks[row] = best[0] if best.size == 1 else rng.choice(best)
    return picks


def select(
    population: Sequence["Individual"],
    scheme: SelectionScheme,
    rng: np.random.Generator,
) -> "Individual":
    """Select one individual."""
    fitness = np.array([ind.fitness for ind in population], dtype=np.float64)
    return population[int(select_indices(fitness, scheme, 1, rng)[0])]
