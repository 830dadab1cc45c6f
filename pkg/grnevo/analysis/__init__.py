"""Post-hoc investigations of finished trials."""

from grnevo.analysis.dominance import (
    LEAST_MODULAR,
    MOST_MODULAR,
    DominancePair,
    DominanceSummary,
    extract_dominance,
    summarize_dominance,
    write_dominance,
)
from grnevo.analysis.frozen import ANALYSIS_PERTURBATIONS, fresh_sets
from grnevo.analysis.neighbors import (
    DEFAULT_NEIGHBORS,
    NeighborProbe,
    neighbor_probe,
    plateau_fraction,
    write_neighbors,
)
from grnevo.analysis.trimming import (
    LATTICE_CAP,
    RemovalLattice,
    TrimReport,
    TrimResult,
    inter_module_edges,
    removal_paths,
    trim_genome,
    trim_inter_module,
    trim_report,
    write_lattice,
)

__all__ = [
    "ANALYSIS_PERTURBATIONS",
    "DEFAULT_NEIGHBORS",
    "LATTICE_CAP",
    "LEAST_MODULAR",
    "MOST_MODULAR",
    "DominancePair",
    "DominanceSummary",
    "NeighborProbe",
    "RemovalLattice",
    "TrimReport",
    "TrimResult",
    "extract_dominance",
    "fresh_sets",
    "inter_module_edges",
    "neighbor_probe",
    "plateau_fraction",
    "removal_paths",
    "summarize_dominance",
    "trim_genome",
    "trim_inter_module",
    "trim_report",
    "write_dominance",
    "write_lattice",
    "write_neighbors",
]
