"""Built-in experiment suites shipped with the package."""

from __future__ import annotations

from pathlib import Path
from typing import List, Union

from grnevo.config import PACKAGE_CONFIGS
from grnevo.harness.experiment import ExperimentSpec

SUITE_DIR = PACKAGE_CONFIGS / "experiments"


def builtin_suites() -> List[str]:
    return sorted(p.stem for p in SUITE_DIR.glob("*.yaml"))


def load_spec(name_or_path: Union[str, Path]) -> ExperimentSpec:
    """Load a spec file, or a built-in suite by name (``crossover``, ``elitism``, ...)."""
    path = Path(name_or_path)
    if path.exists():
        return ExperimentSpec.from_yaml(path)
    builtin = SUITE_DIR / f"{name_or_path}.yaml"
    if builtin.exists():
        return ExperimentSpec.from_yaml(builtin)
    raise FileNotFoundError(
        f"No experiment spec at {name_or_path!r}; built-in suites: {', '.join(builtin_suites())}"
    )
