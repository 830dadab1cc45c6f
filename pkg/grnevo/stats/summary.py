"""Descriptive summaries of replicate values."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Dict, Sequence

import numpy as np


@dataclass(frozen=True)
class Summary:
    count: int
    mean: float
    median: float
    std: float
    min: float
    max: float

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


def summarize(values: Sequence[float]) -> Summary:
    """Mean, median, sample std (0 for a single value), min and max."""
    data = np.asarray(list(values), dtype=np.float64)
    if data.size == 0:
        raise ValueError("Cannot summarize an empty sample")
    return Summary(
        count=int(data.size),
        mean=float(data.mean()),
        median=float(np.median(data)),
        std=float(data.std(ddof=1)) if data.size > 1 else 0.0,
        min=float(data.min()),
        max=float(data.max()),
    )
