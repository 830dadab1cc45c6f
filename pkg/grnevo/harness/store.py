"""
On-disk layout of a finished (or running) trial.

    <trial_dir>/
        trace.csv                 one row per generation, written as the run goes
        manifest.json             config, seed, code version, timings
        events.jsonl              structured run events
        extremes.jsonl            per-generation dominance candidates
        final_perturbations.txt   perturbation sets of the last generation
        final_pop/genome_<k>.txt  final population genomes
        final_pop/population.csv  index, fitness, q, edges, genome_file
"""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import IO, Any, Dict, List, Optional, Union

import pandas as pd

from grnevo import __version__
from grnevo.evolution.population import Individual
from grnevo.evolution.trial import TRACE_COLUMNS, GenerationExtremes, GenerationRow, TrialRecord
from grnevo.fitness.perturbation import load_sets, save_sets
from grnevo.network.genome import Genome

logger = logging.getLogger(__name__)

TRACE_FILE = "trace.csv"
MANIFEST_FILE = "manifest.json"
EXTREMES_FILE = "extremes.jsonl"
PERTURBATIONS_FILE = "final_perturbations.txt"
POPULATION_DIR = "final_pop"
POPULATION_FILE = "population.csv"
POPULATION_COLUMNS = ["index", "fitness", "q", "edges", "genome_file"]


class RecordNotFoundError(FileNotFoundError):
    """A directory does not hold a completed trial."""


class TraceWriter:
    """Appends generation rows to ``trace.csv`` and flushes after each one."""

    def __init__(self, path: Union[str, Path]):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._handle: Optional[IO[str]] = None
        self._writer = None
        self.rows = 0

    def __enter__(self) -> "TraceWriter":
        self._handle = self.path.open("w", newline="", encoding="utf-8")
        self._writer = csv.writer(self._handle, lineterminator="\n")
        self._writer.writerow(TRACE_COLUMNS)
        return self

    def __exit__(self, *exc: Any) -> None:
        if self._handle is not None:
            self._handle.close()
            self._handle = None

    def write(self, row: GenerationRow) -> None:
        if self._writer is None:
            raise RuntimeError("TraceWriter used outside its context")
        self._writer.writerow(row.as_tuple())
        self._handle.flush()
        self.rows += 1


def _member_dict(ind: Individual) -> Dict[str, Any]:
    return {"fitness": ind.fitness, "q": ind.q_score, "entries": ind.genome.entries.tolist()}


def _member_from(data: Dict[str, Any]) -> Individual:
    return Individual(Genome(data["entries"]), float(data["fitness"]), data["q"])


def _optional(value: Any) -> Optional[float]:
    return None if pd.isna(value) else float(value)


class TrialStore:
    """Reads and writes the files of one trial directory."""

    def __init__(self, trial_dir: Union[str, Path]):
        self.trial_dir = Path(trial_dir)

    def trace_writer(self) -> TraceWriter:
        return TraceWriter(self.trial_dir / TRACE_FILE)

    def save(self, record: TrialRecord, status: str = "completed") -> Path:
        """Write everything except the trace, which is streamed during the run."""
        self.trial_dir.mkdir(parents=True, exist_ok=True)
        pop_dir = self.trial_dir / POPULATION_DIR
        rows = []
        for k, ind in enumerate(record.final_population):
            name = f"genome_{k}.txt"
            ind.genome.save(pop_dir / name)
            rows.append((k, ind.fitness, ind.q_score, ind.edges, f"{POPULATION_DIR}/{name}"))
        pd.DataFrame(rows, columns=POPULATION_COLUMNS).to_csv(pop_dir / POPULATION_FILE, index=False)

        with (self.trial_dir / EXTREMES_FILE).open("w", encoding="utf-8") as f:
            for ext in record.history:
                f.write(json.dumps({
                    "generation": ext.generation,
                    "most_modular": _member_dict(ext.most_modular),
                    "fittest": _member_dict(ext.fittest),
                }) + "\n")

        save_sets(record.final_sets, self.trial_dir / PERTURBATIONS_FILE)

        manifest = {
            "trial_id": record.trial_id,
            "seed": record.seed,
            "version": __version__,
            "status": status,
            "generations": len(record.rows),
            "config": record.config.model_dump(mode="json"),
            "wall_time": round(record.wall_time, 3),
            "timings": record.timings,
        }
        path = self.trial_dir / MANIFEST_FILE
        path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        logger.debug("Saved trial %s to %s", record.trial_id, self.trial_dir)
        return path

    def manifest(self) -> Dict[str, Any]:
        path = self.trial_dir / MANIFEST_FILE
        if not path.exists():
            raise RecordNotFoundError(f"No {MANIFEST_FILE} in {self.trial_dir}")
        return json.loads(path.read_text(encoding="utf-8"))

    def load(self) -> TrialRecord:
        from grnevo.config import RunConfig

        manifest = self.manifest()
        trace = pd.read_csv(self.trial_dir / TRACE_FILE)
        rows = [
            GenerationRow(
                int(r.generation), float(r.best_fitness), float(r.mean_fitness),
                _optional(r.best_q), _optional(r.mean_q),
            )
            for r in trace.itertuples(index=False)
        ]
        pop = pd.read_csv(self.trial_dir / POPULATION_DIR / POPULATION_FILE)
        population = [
            Individual(Genome.load(self.trial_dir / r.genome_file), float(r.fitness), _optional(r.q))
            for r in pop.itertuples(index=False)
        ]
        history: List[GenerationExtremes] = []
        extremes_path = self.trial_dir / EXTREMES_FILE
        if extremes_path.exists():
            for line in extremes_path.read_text(encoding="utf-8").splitlines():
                data = json.loads(line)
                history.append(GenerationExtremes(
                    data["generation"], _member_from(data["most_modular"]), _member_from(data["fittest"])
                ))
        sets_path = self.trial_dir / PERTURBATIONS_FILE
        return TrialRecord(
            config=RunConfig.model_validate(manifest["config"]),
            seed=int(manifest["seed"]),
            rows=rows,
            final_population=population,
            history=history,
            final_sets=load_sets(sets_path) if sets_path.exists() else [],
            timings=manifest.get("timings", {}),
            trial_id=manifest.get("trial_id", self.trial_dir.name),
        )


def find_trials(root: Union[str, Path]) -> List[Path]:
    """Trial directories (those holding a manifest) under ``root``, sorted by path."""
    root = Path(root)
    if not root.is_dir():
        return []
    if (root / MANIFEST_FILE).exists():
        return [root]
    return sorted(p.parent for p in root.rglob(MANIFEST_FILE))


def load_records(root: Union[str, Path]) -> List[TrialRecord]:
    dirs = find_trials(root)
    if not dirs:
        raise RecordNotFoundError(f"No completed trials under {root}")
    return [TrialStore(d).load() for d in dirs]
