"""Run configuration model and loader."""

from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from grnevo.evolution.schedule import REFERENCE_GENERATIONS, REFERENCE_TARGETS, TargetSchedule
from grnevo.evolution.selection import SelectionScheme, SelectionType
from grnevo.fitness.evaluator import FitnessContext, FitnessMode
from grnevo.modularity.partition import Partition, derive_partition
from grnevo.modularity.qscore import EdgeCollapse
from grnevo.network.genome import Pattern
from grnevo.validation.config_validator import ConfigValidator, validate_overrides

PACKAGE_CONFIGS = Path(__file__).resolve().parent / "configs"
DEFAULT_CONFIG_PATH = PACKAGE_CONFIGS / "default.conf"


class CrossoverType(str, Enum):
    NONE = "none"
    HORIZONTAL = "horizontal"
    DIAGONAL = "diagonal"


class InitMode(str, Enum):
    RANDOM = "random"
    FOUNDER = "founder"


class RunConfig(BaseModel):
    """Full parameterization of one evolutionary trial."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid", frozen=True)

    population_size: int = Field(100, ge=2)
    mutation_rate: float = Field(0.05, ge=0.0, le=1.0)
    reproduction_rate: float = Field(0.9, gt=0.0, le=1.0)
    elite_size: int = Field(0, ge=0)
    selection_type: SelectionType = SelectionType.PROPORTIONAL
    tournament_size: int = Field(2, ge=1)
    crossover_type: CrossoverType = CrossoverType.DIAGONAL
    crossover_point: Optional[int] = None
    edge_size: int = Field(20, ge=0, alias="edge_count")
    perturbation_count: int = Field(75, ge=1)
    static_perturbation_count: Optional[int] = Field(None, ge=1)
    perturbation_rate: float = Field(0.15, ge=0.0, le=1.0)
    fitness_mode: FitnessMode = FitnessMode.DYNAMIC
    max_generation: int = Field(2000, ge=0)
    max_steps: int = Field(20, ge=1)
    seed: int = 0
    targets: List[str] = Field(default_factory=lambda: list(REFERENCE_TARGETS))
    target_generations: List[int] = Field(default_factory=lambda: list(REFERENCE_GENERATIONS))
    partition: Optional[List[int]] = None
    edge_collapse: EdgeCollapse = EdgeCollapse.UNION
    init_mode: InitMode = InitMode.RANDOM
    dominance_range: Optional[Tuple[int, int]] = None

    @field_validator("targets")
    @classmethod
    def _targets_parse(cls, value: List[str]) -> List[str]:
        if not value:
            raise ValueError("at least one target is required")
        return [Pattern.from_string(t).to_string() for t in value]

    @model_validator(mode="after")
    def _cross_field(self) -> "RunConfig":
        errors = []
        if self.elite_size >= self.population_size:
            errors.append(
                f"elite_size ({self.elite_size}) must be smaller than population_size ({self.population_size})"
            )
        try:
            schedule = self.schedule()
        except ValueError as exc:
            errors.append(str(exc))
            schedule = None
        if schedule is not None:
            n = schedule.n
            if n < 2:
                errors.append(f"targets need at least 2 genes, got {n}")
            if self.edge_size > n * n:
                errors.append(f"edge_size ({self.edge_size}) exceeds n^2 = {n * n}")
            if self.partition is not None:
                try:
                    Partition(tuple(self.partition)).check_covers(n)
                except ValueError as exc:
                    errors.append(f"partition: {exc}")
            if self.crossover_point is not None and not 1 <= self.crossover_point <= n - 1:
                errors.append(f"crossover_point must lie in [1, {n - 1}]")
        window = self.dominance_range
        if window is not None and window[0] > window[1]:
            errors.append(f"dominance_range {window} is empty")
        elif window is not None and not 0 <= window[0] <= window[1] <= self.max_generation:
            errors.append(f"dominance_range {window} must lie within [0, {self.max_generation}]")
        if errors:
            raise ValueError("; ".join(errors))
        return self

    @property
    def n(self) -> int:
        return len(self.targets[0])

    def schedule(self) -> TargetSchedule:
        return TargetSchedule.from_strings(self.targets, self.target_generations)

    def resolved_partition(self) -> Partition:
        """Explicit ``partition`` if configured, otherwise derived from the targets."""
        if self.partition is not None:
            return Partition(tuple(self.partition))
        return derive_partition(self.schedule())

    def selection_scheme(self) -> SelectionScheme:
        return SelectionScheme(self.selection_type, self.tournament_size)

    def resolved_dominance_range(self) -> Tuple[int, int]:
        """Generations scanned for dominance; defaults to the final epoch."""
        if self.dominance_range is not None:
            return self.dominance_range
        return (min(self.target_generations[-1], self.max_generation), self.max_generation)

    def fitness_context(self) -> FitnessContext:
        return FitnessContext(
            mode=self.fitness_mode,
            perturbation_count=self.perturbation_count,
            static_perturbation_count=self.static_perturbation_count,
            rate=self.perturbation_rate,
            max_steps=self.max_steps,
        )

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        return validate_overrides(RunConfig, self.model_dump(mode="json"), overrides)

    def to_text(self) -> str:
        """Render as a ``key = value`` file that ``load_config`` reads back."""
        lines = []
        for key, value in self.model_dump(mode="json").items():
            if value is None:
                rendered = "none"
            elif isinstance(value, (list, tuple)):
                rendered = ",".join(str(v) for v in value)
            else:
                rendered = str(value)
            lines.append(f"{key} = {rendered}")
        return "\n".join(lines) + "\n"


def load_config(path: Union[str, Path, None] = None) -> RunConfig:
    """Load a ``key = value`` configuration file (the packaged defaults when ``path`` is None)."""
    validator = ConfigValidator(RunConfig.model_fields)
    return validator.load(RunConfig, path or DEFAULT_CONFIG_PATH)


def config_from_mapping(values: Dict[str, Any]) -> RunConfig:
    """Validate an in-memory mapping (e.g. an inline YAML ``base`` block)."""
    return validate_overrides(RunConfig, RunConfig().model_dump(mode="json"), values)
