"""Staged target schedules: targets are introduced at fixed generations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from grnevo.network.genome import Pattern

# Gene activity patterns of the two-target reference setup.
REFERENCE_TARGETS = (
    "+-+-+-+-+-",
    "+-+-++-+-+",
)
REFERENCE_GENERATIONS = (0, 500)


@dataclass(frozen=True)
class TargetSchedule:
    stages: Tuple[Tuple[int, Pattern], ...]

    def __post_init__(self) -> None:
        stages = tuple((int(gen), target) for gen, target in self.stages)
        if not stages:
            raise ValueError("A schedule needs at least one target")
        gens = [gen for gen, _ in stages]
        if gens[0] != 0:
            raise ValueError(f"The first target must be introduced at generation 0, got {gens[0]}")
        if any(b <= a for a, b in zip(gens, gens[1:])):
            raise ValueError(f"Introduction generations must be strictly increasing: {gens}")
        lengths = {len(target) for _, target in stages}
        if len(lengths) != 1:
            raise ValueError(f"All targets must have the same length, got {sorted(lengths)}")
        object.__setattr__(self, "stages", stages)

    @property
    def n(self) -> int:
        return len(self.stages[0][1])

    @property
    def targets(self) -> List[Pattern]:
        return [target for _, target in self.stages]

    @property
    def generations(self) -> List[int]:
        return [gen for gen, _ in self.stages]

    def active_indices(self, generation: int) -> List[int]:
        return [i for i, (gen, _) in enumerate(self.stages) if gen <= generation]

    def active_targets(self, generation: int) -> List[Pattern]:
        return [self.stages[i][1] for i in self.active_indices(generation)]

    @classmethod
    def from_strings(cls, targets: Sequence[str], generations: Sequence[int]) -> "TargetSchedule":
        if len(targets) != len(generations):
            raise ValueError(
                f"{len(targets)} targets but {len(generations)} introduction generations"
            )
        return cls(tuple((gen, Pattern.from_string(t)) for gen, t in zip(generations, targets)))

    @classmethod
    def reference(cls) -> "TargetSchedule":
        return cls.from_strings(REFERENCE_TARGETS, REFERENCE_GENERATIONS)
