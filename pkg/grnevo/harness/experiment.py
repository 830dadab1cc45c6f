"""Replicated treatment experiments: specs, parallel trials, aggregation."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import pandas as pd
import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from grnevo.config import PACKAGE_CONFIGS, RunConfig, config_from_mapping, load_config
from grnevo.evolution.trial import TrialRecord, run_trial
from grnevo.harness.store import TrialStore
from grnevo.logging.run_events import RunEventLog, RunEventType
from grnevo.stats.summary import summarize
from grnevo.stats.wilcoxon import MIN_REPORTED_PAIRS, Alternative, PairedSamples, wilcoxon_signed_rank
from grnevo.utils.seeding import derive_seed
from grnevo.validation.config_validator import ConfigValidationError

logger = logging.getLogger(__name__)

PROFILES = {"desk": 20, "paper": 40}
DEFAULT_PROFILE = "desk"
METRICS = ("best_fitness", "best_q")
RESULT_COLUMNS = [
    "treatment", "trial", "seed", "status", "best_fitness", "mean_fitness", "best_q", "mean_q", "error",
]
COMPARISON_COLUMNS = [
    "comparison", "metric", "treatment_a", "treatment_b", "alternative",
    "n_pairs", "mean_a", "mean_b", "w", "p_value", "p_a_less_b", "p_a_greater_b", "method",
]
SUMMARY_COLUMNS = ["treatment", "metric", "count", "mean", "median", "std", "min", "max"]

_OPERATORS = {"<": Alternative.A_LESS_B, ">": Alternative.A_GREATER_B, "!=": Alternative.TWO_SIDED}


@dataclass(frozen=True)
class Comparison:
    """A directional claim ``a < b``, ``a > b`` or ``a != b`` between treatments."""

    a: str
    op: str
    b: str

    @classmethod
    def parse(cls, text: str) -> "Comparison":
        parts = text.split()
        if len(parts) != 3 or parts[1] not in _OPERATORS:
            raise ValueError(f"Comparison must look like 'a < b', 'a > b' or 'a != b', got {text!r}")
        return cls(parts[0], parts[1], parts[2])

    @property
    def alternative(self) -> Alternative:
        return _OPERATORS[self.op]

    def __str__(self) -> str:
        return f"{self.a} {self.op} {self.b}"


class AnalysisSettings(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dominance: bool = False
    trim: bool = False
    perturbations: int = Field(1000, ge=1)


class ExperimentSpec(BaseModel):
    """A named set of treatments run over seed-matched replicate trials."""

    model_config = ConfigDict(extra="forbid")

    name: str
    base: Union[str, Dict[str, Any]] = "default.conf"
    treatments: Dict[str, Dict[str, Any]]
    trials: Optional[int] = Field(None, ge=1)
    master_seed: int = 0
    comparisons: List[str] = Field(default_factory=list)
    analysis: AnalysisSettings = Field(default_factory=AnalysisSettings)
    source_dir: Optional[str] = None

    @field_validator("treatments")
    @classmethod
    def _treatments_named(cls, value: Dict[str, Dict[str, Any]]) -> Dict[str, Dict[str, Any]]:
        if not value:
            raise ValueError("at least one treatment is required")
        for name in value:
            if not name or any(ch.isspace() or ch in "/\\" for ch in name):
                raise ValueError(f"treatment name {name!r} must be a single path-safe word")
        return {name: dict(overrides or {}) for name, overrides in value.items()}

    @model_validator(mode="after")
    def _comparisons_known(self) -> "ExperimentSpec":
        for text in self.comparisons:
            comp = Comparison.parse(text)
            missing = [t for t in (comp.a, comp.b) if t not in self.treatments]
            if missing:
                raise ValueError(f"comparison {text!r} names unknown treatments {missing}")
        return self

    @classmethod
    def from_yaml(cls, path: Union[str, Path]) -> "ExperimentSpec":
        path = Path(path)
        with path.open("r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ConfigValidationError(["experiment spec must be a mapping"], source=str(path))
        data.setdefault("source_dir", str(path.resolve().parent))
        try:
            return cls.model_validate(data)
        except ValueError as exc:
            raise ConfigValidationError([str(exc)], source=str(path)) from exc

    def parsed_comparisons(self) -> List[Comparison]:
        return [Comparison.parse(text) for text in self.comparisons]

    def base_config(self) -> RunConfig:
        if isinstance(self.base, dict):
            return config_from_mapping(self.base)
        candidates = [Path(self.base)]
        if self.source_dir:
            candidates.insert(0, Path(self.source_dir) / self.base)
        candidates.append(PACKAGE_CONFIGS / self.base)
        for candidate in candidates:
            if candidate.exists():
                return load_config(candidate)
        raise ConfigValidationError([f"base config {self.base!r} not found"], source=self.name)

    def treatment_configs(self) -> Dict[str, RunConfig]:
        base = self.base_config()
        return {name: base.with_overrides(**overrides) for name, overrides in self.treatments.items()}

    def trial_seed(self, trial: int) -> int:
        # The treatment is not part of the path, so trial k is seed-matched across treatments.
        return derive_seed(self.master_seed, self.name, trial)


def resolve_trials(spec: ExperimentSpec, profile: Optional[str] = None, trials: Optional[int] = None) -> int:
    """``--trials`` beats ``--profile``, which beats the spec, which beats the desk default."""
    if trials is not None:
        if trials < 1:
            raise ValueError(f"trials must be >= 1, got {trials}")
        return trials
    if profile is not None:
        if profile not in PROFILES:
            raise ValueError(f"Unknown profile {profile!r}; choose from {sorted(PROFILES)}")
        return PROFILES[profile]
    if spec.trials is not None:
        return spec.trials
    return PROFILES[DEFAULT_PROFILE]


def run_and_store(
    cfg: RunConfig,
    seed: int,
    trial_dir: Union[str, Path],
    trial_id: str = "trial",
) -> TrialRecord:
    """Run one trial, streaming ``trace.csv`` and saving the rest when it ends."""
    store = TrialStore(trial_dir)
    events = RunEventLog(log_dir=store.trial_dir, trial_id=trial_id)
    with store.trace_writer() as trace:
        record = run_trial(cfg, seed=seed, on_row=trace.write, events=events, trial_id=trial_id)
    store.save(record)
    return record


@dataclass(frozen=True)
class TrialTask:
    treatment: str
    trial: int
    seed: int
    config: RunConfig
    trial_dir: str

    @property
    def trial_id(self) -> str:
        return f"{self.treatment}-{self.trial:03d}"


@dataclass(frozen=True)
class TrialOutcome:
    treatment: str
    trial: int
    seed: int
    status: str
    best_fitness: Optional[float] = None
    mean_fitness: Optional[float] = None
    best_q: Optional[float] = None
    mean_q: Optional[float] = None
    error: Optional[str] = None

    def as_row(self) -> Tuple:
        return (
            self.treatment, self.trial, self.seed, self.status, self.best_fitness,
            self.mean_fitness, self.best_q, self.mean_q, self.error,
        )


def _run_task(task: TrialTask) -> TrialOutcome:
    try:
        record = run_and_store(task.config, task.seed, task.trial_dir, task.trial_id)
    except Exception as exc:  # recorded per trial; the experiment carries on
        logger.exception("Trial %s failed", task.trial_id)
        return TrialOutcome(task.treatment, task.trial, task.seed, "failed", error=f"{type(exc).__name__}: {exc}")
    final = record.final_row
    return TrialOutcome(
        task.treatment, task.trial, task.seed, "completed",
        final.best_fitness, final.mean_fitness, final.best_q, final.mean_q,
    )


def paired_comparison(
    a: pd.Series,
    b: pd.Series,
    alternative: Union[Alternative, str],
) -> Dict[str, Any]:
    """Wilcoxon on values aligned by index; p is left blank below the minimum pair count.

    ``p_value`` follows ``alternative``; both one-sided p values are always
    reported alongside it.
    """
    joined = pd.concat([a.rename("a"), b.rename("b")], axis=1, join="inner").dropna()
    samples = PairedSamples(tuple(joined["a"]), tuple(joined["b"]))
    row: Dict[str, Any] = {
        "n_pairs": len(samples),
        "mean_a": summarize(samples.a).mean if len(samples) else None,
        "mean_b": summarize(samples.b).mean if len(samples) else None,
        "w": None,
        "p_value": None,
        "p_a_less_b": None,
        "p_a_greater_b": None,
        "method": "too-few-pairs",
    }
    if samples.reportable:
        result = wilcoxon_signed_rank(samples, alternative)
        row.update(w=result.statistic, p_value=result.p_value, method=result.method)
        row["p_a_less_b"] = wilcoxon_signed_rank(samples, Alternative.A_LESS_B).p_value
        row["p_a_greater_b"] = wilcoxon_signed_rank(samples, Alternative.A_GREATER_B).p_value
    return row


def compare_treatments(results: pd.DataFrame, comparisons: List[Comparison]) -> pd.DataFrame:
    done = results[results["status"] == "completed"]
    rows = []
    for comp in comparisons:
        for metric in METRICS:
            values = {
                name: done[done["treatment"] == name].set_index("trial")[metric].astype(float)
                for name in (comp.a, comp.b)
            }
            row = {
                "comparison": str(comp),
                "metric": metric,
                "treatment_a": comp.a,
                "treatment_b": comp.b,
                "alternative": comp.alternative.value,
            }
            row.update(paired_comparison(values[comp.a], values[comp.b], comp.alternative))
            rows.append(row)
    return pd.DataFrame(rows, columns=COMPARISON_COLUMNS)


def summarize_treatments(results: pd.DataFrame, treatments: List[str]) -> pd.DataFrame:
    done = results[results["status"] == "completed"]
    rows = []
    for name in treatments:
        for metric in METRICS:
            values = done.loc[done["treatment"] == name, metric].dropna()
            if values.empty:
                continue
            rows.append({"treatment": name, "metric": metric, **summarize(values).to_dict()})
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


@dataclass
class ExperimentResult:
    results: pd.DataFrame
    comparisons: pd.DataFrame
    summary: pd.DataFrame
    out_dir: Path

    @property
    def failures(self) -> int:
        return int((self.results["status"] != "completed").sum())


def run_experiment(
    spec: ExperimentSpec,
    out_dir: Union[str, Path],
    workers: int = 1,
    trials: Optional[int] = None,
    profile: Optional[str] = None,
) -> ExperimentResult:
    """Run every treatment over the same seed-matched trials and aggregate.

    Output is independent of ``workers``: tasks are enumerated in a fixed
    order and results are collected in that order.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    count = resolve_trials(spec, profile, trials)
    configs = spec.treatment_configs()
    tasks = [
        TrialTask(name, k, spec.trial_seed(k), cfg, str(out_dir / name / f"trial_{k:03d}"))
        for name, cfg in configs.items()
        for k in range(count)
    ]
    logger.info(
        "Experiment %s: %d treatments x %d trials on %d worker(s)",
        spec.name, len(configs), count, workers,
    )
    with (out_dir / "experiment.yaml").open("w", encoding="utf-8") as f:
        yaml.safe_dump(spec.model_dump(exclude={"source_dir"}) | {"trials": count}, f, sort_keys=False)

    if workers <= 1:
        outcomes = [_run_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_task, tasks))

    events = RunEventLog(log_dir=out_dir)
    for outcome in outcomes:
        trial_id = f"{outcome.treatment}-{outcome.trial:03d}"
        if outcome.status == "completed":
            events.log(RunEventType.TRIAL_COMPLETED, trial_id, seed=outcome.seed)
        else:
            events.log(RunEventType.TRIAL_FAILED, trial_id, seed=outcome.seed, error=outcome.error)

    results = pd.DataFrame([o.as_row() for o in outcomes], columns=RESULT_COLUMNS)
    if events.count(RunEventType.TRIAL_FAILED):
        logger.warning(
            "%d of %d trials failed; aggregating the completed ones",
            events.count(RunEventType.TRIAL_FAILED), len(outcomes),
        )
    comparisons = compare_treatments(results, spec.parsed_comparisons())
    summary = summarize_treatments(results, list(configs))
    results.to_csv(out_dir / "results.csv", index=False)
    comparisons.to_csv(out_dir / "comparisons.csv", index=False)
    summary.to_csv(out_dir / "summary.csv", index=False)

    if spec.analysis.dominance or spec.analysis.trim:
        from grnevo.harness.analyze import analyze_experiment

        analyze_experiment(out_dir, list(configs), spec.analysis)
    return ExperimentResult(results, comparisons, summary, out_dir)
