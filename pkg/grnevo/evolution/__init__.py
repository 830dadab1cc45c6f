"""Genetic operators, selection and the generational loop."""

from grnevo.evolution.operators import (
    crossover_diagonal,
    crossover_horizontal,
    loss_probability,
    mutate,
    mutate_entries,
    random_entries,
)
from grnevo.evolution.schedule import REFERENCE_GENERATIONS, REFERENCE_TARGETS, TargetSchedule
from grnevo.evolution.selection import SelectionScheme, SelectionType, select, select_indices
from grnevo.evolution.population import (
    STREAM_NAMES,
    Individual,
    Streams,
    advance_generation,
    breed,
    elite_indices,
    evaluate_generation,
    evaluate_population,
    init_population,
)
from grnevo.evolution.trial import (
    TRACE_COLUMNS,
    DominanceTracker,
    GenerationExtremes,
    GenerationRow,
    TrialRecord,
    generation_extremes,
    run_trial,
    summarize_generation,
)

__all__ = [
    "REFERENCE_GENERATIONS",
    "REFERENCE_TARGETS",
    "STREAM_NAMES",
    "TRACE_COLUMNS",
    "DominanceTracker",
    "GenerationExtremes",
    "GenerationRow",
    "Individual",
    "SelectionScheme",
    "SelectionType",
    "Streams",
    "TargetSchedule",
    "TrialRecord",
    "advance_generation",
    "breed",
    "crossover_diagonal",
    "crossover_horizontal",
    "elite_indices",
    "evaluate_generation",
    "evaluate_population",
    "generation_extremes",
    "init_population",
    "loss_probability",
    "mutate",
    "mutate_entries",
    "random_entries",
    "run_trial",
    "select",
    "select_indices",
    "summarize_generation",
]
