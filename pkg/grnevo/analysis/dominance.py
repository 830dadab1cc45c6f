"""Modularity dominance: the most modular versus the fittest network of a trial."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from grnevo.evolution.population import Individual
from grnevo.evolution.trial import TrialRecord, fitness_key, modularity_key
from grnevo.stats.summary import summarize
from grnevo.stats.wilcoxon import Alternative, PairedSamples, wilcoxon_signed_rank

logger = logging.getLogger(__name__)

DOMINANCE_COLUMNS = ["trial_id", "role", "fitness", "q", "genome_file"]
MOST_MODULAR = "fittest_of_most_modular"
LEAST_MODULAR = "least_modular_of_fittest"


@dataclass(frozen=True)
class DominancePair:
    fittest_of_most_modular: Individual
    least_modular_of_fittest: Individual
    trial_id: str
    generations: Tuple[int, int] = (0, 0)

    def roles(self):
        return [
            (MOST_MODULAR, self.fittest_of_most_modular),
            (LEAST_MODULAR, self.least_modular_of_fittest),
        ]


def extract_dominance(
    record: TrialRecord,
    generation_range: Optional[Tuple[int, int]] = None,
) -> DominancePair:
    """Scan the recorded generations in range for the two extremal individuals.

    The first member has maximal Q (ties: higher fitness); the second has
    maximal fitness (ties: lower Q). Earlier generations win exact ties.
    """
    lo, hi = generation_range or record.config.resolved_dominance_range()
    if not record.history:
        raise ValueError(f"Trial {record.trial_id} has no recorded generations")
    first, last = record.history[0].generation, record.history[-1].generation
    if lo < first or hi > last:
        raise ValueError(
            f"Trial {record.trial_id} recorded generations [{first}, {last}] only; "
            f"cannot scan [{lo}, {hi}]"
        )
    window = [ext for ext in record.history if lo <= ext.generation <= hi]
    most = max(window, key=lambda ext: modularity_key(ext.most_modular))
    best = max(window, key=lambda ext: fitness_key(ext.fittest))
    return DominancePair(
        fittest_of_most_modular=most.most_modular,
        least_modular_of_fittest=best.fittest,
        trial_id=record.trial_id,
        generations=(most.generation, best.generation),
    )


@dataclass(frozen=True)
class DominanceSummary:
    trials: int
    most_modular_q: float
    most_modular_fitness: float
    most_modular_edges: float
    least_modular_q: float
    least_modular_fitness: float
    least_modular_edges: float
    edges_w: Optional[float]
    edges_p: Optional[float]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {"role": MOST_MODULAR, "q": self.most_modular_q,
                 "fitness": self.most_modular_fitness, "edges": self.most_modular_edges},
                {"role": LEAST_MODULAR, "q": self.least_modular_q,
                 "fitness": self.least_modular_fitness, "edges": self.least_modular_edges},
            ]
        ).assign(trials=self.trials, edges_w=self.edges_w, edges_p=self.edges_p)


def _mean_q(members: Sequence[Individual]) -> float:
    qs = [m.q_score for m in members if m.q_score is not None]
    return float(np.mean(qs)) if qs else float("nan")


def summarize_dominance(pairs: Sequence[DominancePair]) -> DominanceSummary:
    """Role means plus a one-sided test that modular networks use fewer edges."""
    if not pairs:
        raise ValueError("No dominance pairs to summarize")
    most = [p.fittest_of_most_modular for p in pairs]
    least = [p.least_modular_of_fittest for p in pairs]
    edges = PairedSamples(tuple(m.edges for m in most), tuple(m.edges for m in least))
    w = p_value = None
    if edges.reportable:
        result = wilcoxon_signed_rank(edges, Alternative.A_LESS_B)
        w, p_value = result.statistic, result.p_value
    return DominanceSummary(
        trials=len(pairs),
        most_modular_q=_mean_q(most),
        most_modular_fitness=summarize([m.fitness for m in most]).mean,
        most_modular_edges=summarize(edges.a).mean,
        least_modular_q=_mean_q(least),
        least_modular_fitness=summarize([m.fitness for m in least]).mean,
        least_modular_edges=summarize(edges.b).mean,
        edges_w=w,
        edges_p=p_value,
    )


def write_dominance(pairs: Sequence[DominancePair], out_dir: Union[str, Path]) -> Path:
    """Write ``dominance.csv``, ``dominance_summary.csv`` and one genome file per member."""
    out_dir = Path(out_dir)
    genome_dir = out_dir / "dominance_genomes"
    genome_dir.mkdir(parents=True, exist_ok=True)
    rows: List[dict] = []
    for pair in pairs:
        for role, member in pair.roles():
            name = f"{pair.trial_id}_{role}.txt"
            member.genome.save(genome_dir / name)
            rows.append({
                "trial_id": pair.trial_id,
                "role": role,
                "fitness": member.fitness,
                "q": member.q_score,
                "genome_file": f"dominance_genomes/{name}",
            })
    path = out_dir / "dominance.csv"
    pd.DataFrame(rows, columns=DOMINANCE_COLUMNS).to_csv(path, index=False)
    summarize_dominance(pairs).to_frame().to_csv(out_dir / "dominance_summary.csv", index=False)
    logger.info("Wrote %d dominance pairs to %s", len(pairs), path)
    return path
