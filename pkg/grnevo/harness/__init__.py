"""Running, storing and aggregating trials."""

from grnevo.harness.analyze import ANALYSIS_MODES, analyze_experiment, analyze_records
from grnevo.harness.experiment import (
    PROFILES,
    Comparison,
    ExperimentResult,
    ExperimentSpec,
    paired_comparison,
    resolve_trials,
    run_and_store,
    run_experiment,
)
from grnevo.harness.store import RecordNotFoundError, TraceWriter, TrialStore, find_trials, load_records
from grnevo.harness.suite import builtin_suites, load_spec

__all__ = [
    "ANALYSIS_MODES",
    "PROFILES",
    "Comparison",
    "ExperimentResult",
    "ExperimentSpec",
    "RecordNotFoundError",
    "TraceWriter",
    "TrialStore",
    "analyze_experiment",
    "analyze_records",
    "builtin_suites",
    "find_trials",
    "load_records",
    "load_spec",
    "paired_comparison",
    "resolve_trials",
    "run_and_store",
    "run_experiment",
]
