"""
grnevo - Evolution of modular gene regulatory networks.

Boolean regulatory networks are evolved for robust recovery of a sequence of
target activity patterns, and their modularity is tracked against a
partition derived from how the targets change.

Quick Start:
    # CLI
    grnevo run --out runs/demo
    grnevo experiment --spec crossover --out runs/crossover --workers 8
    grnevo analyze runs/crossover/diagonal --mode trim

    # Python
    from grnevo.config import load_config
    from grnevo.evolution import run_trial

    record = run_trial(load_config())
    print(record.final_row)
"""

__version__ = "0.1.0"
__author__ = "grnevo developers"

# Core components
from grnevo.config import RunConfig, load_config
from grnevo.evolution.trial import TrialRecord, run_trial
from grnevo.network.genome import Genome, Pattern

__all__ = [
    "__version__",
    "RunConfig",
    "load_config",
    "TrialRecord",
    "run_trial",
    "Genome",
    "Pattern",
]
