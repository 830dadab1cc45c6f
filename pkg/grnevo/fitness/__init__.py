"""Stochastic robustness fitness, dynamic and static, plus an exact oracle."""

from grnevo.fitness.evaluator import (
    FITNESS_SCALE,
    TRAJECTORY_EXPONENT,
    FitnessContext,
    FitnessMode,
    evaluate_genomes,
    fitness_ceiling,
    fitness_multi_target,
    fitness_single_target,
    gamma,
    gamma_from_distance,
    gamma_values,
)
from grnevo.fitness.oracle import MAX_ORACLE_GENES, exact_fitness_oracle, expected_gamma
from grnevo.fitness.perturbation import (
    PerturbationSet,
    load_sets,
    sample_perturbations,
    save_sets,
)

__all__ = [
    "FITNESS_SCALE",
    "MAX_ORACLE_GENES",
    "TRAJECTORY_EXPONENT",
    "FitnessContext",
    "FitnessMode",
    "PerturbationSet",
    "evaluate_genomes",
    "exact_fitness_oracle",
    "expected_gamma",
    "fitness_ceiling",
    "fitness_multi_target",
    "fitness_single_target",
    "gamma",
    "gamma_from_distance",
    "gamma_values",
    "load_sets",
    "sample_perturbations",
    "save_sets",
]
