"""Post-hoc analyses over stored trials, writing the analysis CSVs."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from grnevo.analysis.dominance import DominancePair, extract_dominance, write_dominance
from grnevo.analysis.frozen import ANALYSIS_PERTURBATIONS, fresh_sets
from grnevo.analysis.neighbors import DEFAULT_NEIGHBORS, neighbor_probe, plateau_fraction, write_neighbors
from grnevo.analysis.trimming import (
    LATTICE_CAP,
    SAMPLED_ORDERS,
    TrimReport,
    removal_paths,
    trim_genome,
    trim_report,
    write_lattice,
)
from grnevo.evolution.trial import TrialRecord
from grnevo.fitness.perturbation import PerturbationSet
from grnevo.harness.store import find_trials, load_records
from grnevo.utils.seeding import derive_seed

if TYPE_CHECKING:
    from grnevo.harness.experiment import AnalysisSettings

logger = logging.getLogger(__name__)

ANALYSIS_MODES = ("dominance", "trim", "paths", "neighbors")
NEIGHBOR_SUMMARY_COLUMNS = ["trial_id", "max_fitness", "max_q", "self_fitness", "self_q", "on_plateau"]


def analysis_rng(record: TrialRecord, mode: str) -> np.random.Generator:
    return np.random.default_rng(derive_seed(record.seed, "analysis", mode))


def analysis_sets(record: TrialRecord, rng: np.random.Generator, p_count: int) -> List[PerturbationSet]:
    """Fresh frozen sets for the targets active at the end of the trial."""
    cfg = record.config
    targets = cfg.schedule().active_targets(cfg.max_generation)
    return fresh_sets(targets, rng, p_count, cfg.perturbation_rate)


def dominance_analysis(
    records: Sequence[TrialRecord],
    out_dir: Union[str, Path],
    generation_range: Optional[Tuple[int, int]] = None,
) -> List[DominancePair]:
    pairs = [extract_dominance(record, generation_range) for record in records]
    write_dominance(pairs, out_dir)
    return pairs


def trim_analysis(
    records: Sequence[TrialRecord],
    out_dir: Union[str, Path],
    p_count: int = ANALYSIS_PERTURBATIONS,
    generation_range: Optional[Tuple[int, int]] = None,
) -> TrimReport:
    """Trim each trial's least-modular-of-fittest genome and compare on frozen sets."""
    results = []
    for record in records:
        pair = extract_dominance(record, generation_range)
        sets = analysis_sets(record, analysis_rng(record, "trim"), p_count)
        results.append(trim_genome(
            pair.least_modular_of_fittest.genome,
            record.config.resolved_partition(),
            sets,
            trial_id=record.trial_id,
            edge_collapse=record.config.edge_collapse,
            max_steps=record.config.max_steps,
        ))
    report = trim_report(results)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report.to_frame().to_csv(out_dir / "trim.csv", index=False)
    return report


def paths_analysis(
    records: Sequence[TrialRecord],
    out_dir: Union[str, Path],
    p_count: int = ANALYSIS_PERTURBATIONS,
    cap: int = LATTICE_CAP,
    orders: int = SAMPLED_ORDERS,
    generation_range: Optional[Tuple[int, int]] = None,
) -> List[Path]:
    written = []
    for record in records:
        pair = extract_dominance(record, generation_range)
        rng = analysis_rng(record, "paths")
        sets = analysis_sets(record, rng, p_count)
        lattice = removal_paths(
            pair.least_modular_of_fittest.genome,
            record.config.resolved_partition(),
            sets,
            cap=cap,
            rng=rng,
            orders=orders,
            max_steps=record.config.max_steps,
        )
        written.append(write_lattice(lattice, Path(out_dir) / "paths" / record.trial_id))
        logger.info(
            "%s: %d inter-module edges, intact %.4f, fully trimmed %.4f",
            record.trial_id, lattice.k, lattice.empty_fitness, lattice.full_fitness,
        )
    return written


def neighbors_analysis(
    records: Sequence[TrialRecord],
    out_dir: Union[str, Path],
    neighbor_count: int = DEFAULT_NEIGHBORS,
    mu: Optional[float] = None,
    use_final_sets: bool = True,
    p_count: int = ANALYSIS_PERTURBATIONS,
) -> pd.DataFrame:
    """Probe the mutational neighborhood of each trial's fittest final genome.

    With ``use_final_sets`` the trial's last-generation perturbation sets are
    reused, otherwise fresh frozen sets of ``p_count`` samples are drawn.
    """
    out_dir = Path(out_dir)
    rows = []
    probes = []
    for record in records:
        rng = analysis_rng(record, "neighbors")
        if use_final_sets and record.final_sets:
            sets = record.final_sets
        else:
            sets = analysis_sets(record, rng, p_count)
        cfg = record.config
        probe = neighbor_probe(
            record.fittest().genome,
            sets,
            cfg.resolved_partition(),
            rng,
            neighbor_count=neighbor_count,
            mu=cfg.mutation_rate if mu is None else mu,
            edge_collapse=cfg.edge_collapse,
            max_steps=cfg.max_steps,
        )
        write_neighbors(probe, out_dir / "neighbors" / f"{record.trial_id}.csv")
        probes.append(probe)
        rows.append((record.trial_id, *probe.summary(), probe.on_plateau))
    summary = pd.DataFrame(rows, columns=NEIGHBOR_SUMMARY_COLUMNS)
    out_dir.mkdir(parents=True, exist_ok=True)
    summary.to_csv(out_dir / "neighbors_summary.csv", index=False)
    if probes:
        logger.info("Plateau fraction: %.3f over %d genomes", plateau_fraction(probes), len(probes))
    return summary


def analyze_records(
    record_dir: Union[str, Path],
    mode: str,
    out_dir: Optional[Union[str, Path]] = None,
    **params,
):
    """Load every trial under ``record_dir`` and run one analysis mode on them."""
    if mode not in ANALYSIS_MODES:
        raise ValueError(f"Unknown analysis mode {mode!r}; choose from {ANALYSIS_MODES}")
    records = load_records(record_dir)
    out_dir = Path(out_dir) if out_dir is not None else Path(record_dir) / "analysis"
    runner = {
        "dominance": dominance_analysis,
        "trim": trim_analysis,
        "paths": paths_analysis,
        "neighbors": neighbors_analysis,
    }[mode]
    logger.info("Running %s analysis over %d trials", mode, len(records))
    return runner(records, out_dir, **params)


def analyze_experiment(
    out_dir: Union[str, Path],
    treatments: Sequence[str],
    settings: "AnalysisSettings",
) -> None:
    """Analyses requested by an experiment spec, one directory per treatment."""
    for name in treatments:
        trial_root = Path(out_dir) / name
        if not find_trials(trial_root):
            logger.warning("Treatment %s has no completed trials to analyze", name)
            continue
        records = load_records(trial_root)
        target = trial_root / "analysis"
        if settings.dominance:
            dominance_analysis(records, target)
        if settings.trim:
            trim_analysis(records, target, p_count=settings.perturbations)
