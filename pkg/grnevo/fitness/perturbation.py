"""Perturbation sets: randomly corrupted copies of a target pattern."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np

from grnevo.network.genome import Pattern


@dataclass(frozen=True, eq=False)
class PerturbationSet:
    """``P`` perturbed copies of ``target``, each gene flipped with probability ``rate``."""

    target: Pattern
    samples: np.ndarray  # (P, N) int8 over {-1, +1}
    rate: float

    def __post_init__(self) -> None:
        samples = np.array(self.samples, dtype=np.int8, copy=True)
        if samples.ndim != 2 or samples.shape[0] < 1:
            raise ValueError("A perturbation set needs at least one sample")
        if samples.shape[1] != len(self.target):
            raise ValueError(
                f"Sample length {samples.shape[1]} does not match target length {len(self.target)}"
            )
        if not 0.0 <= self.rate <= 1.0:
            raise ValueError(f"Perturbation rate must lie in [0, 1], got {self.rate}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @property
    def size(self) -> int:
        return int(self.samples.shape[0])

    def patterns(self) -> List[Pattern]:
        return [Pattern(row) for row in self.samples]

    def flips(self) -> np.ndarray:
        """Number of flipped genes per sample."""
        return np.count_nonzero(self.samples != self.target.states, axis=1)

    # -- audit export ------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"target={self.target.to_string()} rate={self.rate!r} P={self.size}"]
        lines.extend(Pattern(row).to_string() for row in self.samples)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PerturbationSet":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("Empty perturbation set text")
        header = dict(tok.split("=", 1) for tok in lines[0].split())
        target = Pattern.from_string(header["target"])
        samples = np.stack([Pattern.from_string(ln).states for ln in lines[1:]])
        if samples.shape[0] != int(header["P"]):
            raise ValueError(f"Header declares P={header['P']} but {samples.shape[0]} samples follow")
        return cls(target=target, samples=samples, rate=float(header["rate"]))


def sample_perturbations(
    target: Pattern,
    p_count: int,
    rate: float,
    rng: np.random.Generator,
) -> PerturbationSet:
    """Draw ``p_count`` independent perturbations of ``target``."""
    if p_count < 1:
        raise ValueError(f"p_count must be >= 1, got {p_count}")
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    flips = rng.random((p_count, len(target))) < rate
    samples = np.where(flips, -target.states, target.states)
    return PerturbationSet(target=target, samples=samples, rate=rate)


def save_sets(sets: Sequence[PerturbationSet], path: Union[str, Path]) -> Path:
    """Write several sets to one file, separated by blank lines."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(s.to_text() for s in sets), encoding="utf-8")
    return path


def load_sets(path: Union[str, Path]) -> List[PerturbationSet]:
    blocks: List[List[str]] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.startswith("target="):
            blocks.append([line])
        elif line.strip() and blocks:
            blocks[-1].append(line)
    return [PerturbationSet.from_text("\n".join(block)) for block in blocks]
