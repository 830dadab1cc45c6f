"""Robustness fitness of gene regulatory networks.

For every perturbed copy of a target the network is iterated to its
attractor; the distance D to the target (N when unresolved) gives the
trajectory score ``gamma = (1 - D/N) ** 5``. Per-target fitness is
``1 - exp(-3 * mean(gamma))`` and the overall fitness is the mean over the
active targets.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence

import numpy as np

from grnevo.fitness.perturbation import PerturbationSet, sample_perturbations
from grnevo.network.dynamics import DEFAULT_MAX_STEPS, distances_to, settle
from grnevo.network.genome import Genome, Pattern, check_dimensions

if TYPE_CHECKING:
    from grnevo.evolution.schedule import TargetSchedule

logger = logging.getLogger(__name__)

TRAJECTORY_EXPONENT = 5
FITNESS_SCALE = 3.0
EVAL_CHUNK = 128


class FitnessMode(str, Enum):
    DYNAMIC = "dynamic"
    STATIC = "static"


def fitness_ceiling(scale: float = FITNESS_SCALE) -> float:
    """Fitness of a genome that recovers every sample exactly."""
    return float(1.0 - np.exp(-scale))


def gamma_from_distance(distance: np.ndarray, n: int, exponent: int = TRAJECTORY_EXPONENT) -> np.ndarray:
    return (1.0 - np.asarray(distance, dtype=np.float64) / n) ** exponent


def gamma(
    genome: Genome,
    perturbed: Pattern,
    target: Pattern,
    max_steps: int = DEFAULT_MAX_STEPS,
    exponent: int = TRAJECTORY_EXPONENT,
) -> float:
    """Trajectory score of one perturbed start state."""
    check_dimensions(genome, perturbed, target)
    final, resolved, _ = settle(genome.entries[None], perturbed.states[None, None], max_steps)
    dist = distances_to(final, resolved, target.states)
    return float(gamma_from_distance(dist, genome.n, exponent)[0, 0])


def gamma_values(
    genomes: np.ndarray,
    pset: PerturbationSet,
    max_steps: int = DEFAULT_MAX_STEPS,
    exponent: int = TRAJECTORY_EXPONENT,
) -> np.ndarray:
    """Per-sample trajectory scores, shape (B, P)."""
    genomes = np.asarray(genomes)
    n = genomes.shape[-1]
    if len(pset.target) != n:
        raise ValueError(f"Perturbation set length {len(pset.target)} does not fit n={n}")
    final, resolved, _ = settle(genomes, pset.samples[None], max_steps)
    return gamma_from_distance(distances_to(final, resolved, pset.target.states), n, exponent)


def fitness_single_target(
    genome: Genome,
    pset: PerturbationSet,
    max_steps: int = DEFAULT_MAX_STEPS,
    exponent: int = TRAJECTORY_EXPONENT,
    scale: float = FITNESS_SCALE,
) -> float:
    if pset.size < 1:
        raise ValueError("Empty perturbation set")
    mean_gamma = gamma_values(genome.entries[None], pset, max_steps, exponent).mean(axis=1)[0]
    return float(1.0 - np.exp(-scale * mean_gamma))


def evaluate_genomes(
    genomes: np.ndarray,
    sets: Sequence[PerturbationSet],
    max_steps: int = DEFAULT_MAX_STEPS,
    exponent: int = TRAJECTORY_EXPONENT,
    scale: float = FITNESS_SCALE,
    chunk: int = EVAL_CHUNK,
) -> np.ndarray:
    """Multi-target fitness of a (B, N, N) genome stack against frozen sets.

    Evaluation is chunked along B so large batches (e.g. removal lattices)
    stay within memory.
    """
    if not sets:
        raise ValueError("No active targets to evaluate against")
    genomes = np.asarray(genomes)
    per_target = np.empty((genomes.shape[0], len(sets)), dtype=np.float64)
    for start in range(0, genomes.shape[0], chunk):
        block = genomes[start:start + chunk]
        for k, pset in enumerate(sets):
            mean_gamma = gamma_values(block, pset, max_steps, exponent).mean(axis=1)
            per_target[start:start + chunk, k] = 1.0 - np.exp(-scale * mean_gamma)
    return per_target.mean(axis=1)


@dataclass
class FitnessContext:
    """Perturbation sets in force for the current generation.

    In static mode every target's set is drawn once when the run starts; in
    dynamic mode the active targets' sets are redrawn every generation from
    the perturbation stream.
    """

    mode: FitnessMode = FitnessMode.DYNAMIC
    perturbation_count: int = 75
    static_perturbation_count: Optional[int] = None
    rate: float = 0.15
    max_steps: int = DEFAULT_MAX_STEPS
    exponent: int = TRAJECTORY_EXPONENT
    scale: float = FITNESS_SCALE
    sets: Dict[int, PerturbationSet] = field(default_factory=dict)
    active: List[int] = field(default_factory=list)
    generation: int = -1

    def initialize(self, schedule: "TargetSchedule", rng: np.random.Generator) -> None:
        """Draw the run-long sets for static mode; no-op in dynamic mode."""
        self.sets.clear()
        self.active = []
        self.generation = -1
        if self.mode is FitnessMode.STATIC:
            count = self.static_perturbation_count or self.perturbation_count
            for index, target in enumerate(schedule.targets):
                self.sets[index] = sample_perturbations(target, count, self.rate, rng)

    def refresh(self, generation: int, schedule: "TargetSchedule", rng: np.random.Generator) -> List[int]:
        """Activate the targets introduced by ``generation`` and resample in dynamic mode.

        Returns the indices of targets that became active at this call.
        """
        active = schedule.active_indices(generation)
        introduced = [i for i in active if i not in self.active]
        self.active = active
        self.generation = generation
        if self.mode is FitnessMode.DYNAMIC:
            self.sets = {
                i: sample_perturbations(schedule.targets[i], self.perturbation_count, self.rate, rng)
                for i in active
            }
        for index in introduced:
            logger.debug("Generation %d: target %d active", generation, index)
        return introduced

    def active_sets(self) -> List[PerturbationSet]:
        if not self.active:
            raise ValueError("Fitness context has no active targets")
        return [self.sets[i] for i in self.active]

    def evaluate(self, genomes: np.ndarray) -> np.ndarray:
        return evaluate_genomes(
            genomes, self.active_sets(), self.max_steps, self.exponent, self.scale
        )


def fitness_multi_target(genome: Genome, ctx: FitnessContext) -> float:
    """Mean single-target fitness over the context's active targets."""
    sets = ctx.active_sets()
    for pset in sets:
        check_dimensions(genome, pset.target)
    return float(ctx.evaluate(genome.entries[None])[0])
