"""Gene regulatory network representation and Boolean dynamics."""

from grnevo.network.dynamics import (
    DEFAULT_MAX_STEPS,
    AttractorResult,
    distances_to,
    find_attractor,
    hamming,
    settle,
    step,
)
from grnevo.network.genome import (
    DimensionMismatchError,
    Genome,
    GenomeFormatError,
    Pattern,
    check_dimensions,
    stack_genomes,
)

__all__ = [
    "DEFAULT_MAX_STEPS",
    "AttractorResult",
    "DimensionMismatchError",
    "Genome",
    "GenomeFormatError",
    "Pattern",
    "check_dimensions",
    "distances_to",
    "find_attractor",
    "hamming",
    "settle",
    "stack_genomes",
    "step",
]
