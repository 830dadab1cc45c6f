"""Wall-clock accounting for the phases of a trial."""

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterator


@dataclass
class PhaseTimer:
    totals: Dict[str, float] = field(default_factory=dict)

    @contextmanager
    def phase(self, label: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.totals[label] = self.totals.get(label, 0.0) + time.perf_counter() - start

    @property
    def total(self) -> float:
        return sum(self.totals.values())

    def rounded(self, digits: int = 3) -> Dict[str, float]:
        return {label: round(seconds, digits) for label, seconds in sorted(self.totals.items())}
