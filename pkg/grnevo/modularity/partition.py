"""Gene partitions derived from target activation histories."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Sequence, Tuple

import numpy as np

if TYPE_CHECKING:
    from grnevo.evolution.schedule import TargetSchedule


@dataclass(frozen=True)
class Partition:
    """Module id per gene; ids are contiguous from 0."""

    module_of: Tuple[int, ...]

    def __post_init__(self) -> None:
        ids = tuple(int(m) for m in self.module_of)
        if not ids:
            raise ValueError("Partition must cover at least one gene")
        if min(ids) < 0 or set(ids) != set(range(max(ids) + 1)):
            raise ValueError(f"Module ids must be contiguous from 0, got {sorted(set(ids))}")
        object.__setattr__(self, "module_of", ids)

    @property
    def n(self) -> int:
        return len(self.module_of)

    @property
    def k(self) -> int:
        return max(self.module_of) + 1

    def members(self, module: int) -> List[int]:
        return [gene for gene, m in enumerate(self.module_of) if m == module]

    def labels(self) -> np.ndarray:
        return np.asarray(self.module_of, dtype=np.int64)

    def same_module_mask(self) -> np.ndarray:
        """(N, N) bool mask, True where both genes share a module."""
        labels = self.labels()
        return labels[:, None] == labels[None, :]

    def check_covers(self, n: int) -> None:
        if self.n != n:
            raise ValueError(f"Partition covers {self.n} genes, genome has {n}")

    def to_string(self) -> str:
        return ",".join(str(m) for m in self.module_of)

    @classmethod
    def from_string(cls, text: str) -> "Partition":
        try:
            return cls(tuple(int(tok) for tok in text.replace(" ", "").split(",") if tok))
        except ValueError as exc:
            raise ValueError(f"Cannot parse partition {text!r}") from exc

    @classmethod
    def single(cls, n: int) -> "Partition":
        return cls((0,) * n)


def derive_partition(schedule: "TargetSchedule") -> Partition:
    """Group genes whose activation changed at the same target transitions.

    Module ids are assigned in order of first appearance, so gene 0 is
    always in module 0.
    """
    targets: Sequence = schedule.targets
    if not targets:
        raise ValueError("Schedule has no targets")
    states = np.stack([t.states for t in targets])
    changes = states[1:] != states[:-1]  # (T-1, N)
    ids: Dict[Tuple[bool, ...], int] = {}
    module_of = []
    for gene in range(states.shape[1]):
        profile = tuple(bool(c) for c in changes[:, gene])
        module_of.append(ids.setdefault(profile, len(ids)))
    return Partition(tuple(module_of))
