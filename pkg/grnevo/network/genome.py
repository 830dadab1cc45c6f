"""Genome and gene activity pattern types.

A genome is an N x N signed adjacency matrix where entry (j, i) is the effect
of gene j on gene i: +1 activation, -1 repression, 0 no interaction.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np


class DimensionMismatchError(ValueError):
    """Raised when a genome and a pattern (or two patterns) disagree in size."""


class GenomeFormatError(ValueError):
    """Raised when a genome text file cannot be parsed."""


_ALLOWED = np.array([-1, 0, 1], dtype=np.int8)


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=np.int8, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class Genome:
    """Immutable signed regulatory matrix."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        raw = np.asarray(self.entries)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise ValueError(f"Genome must be a square matrix, got shape {raw.shape}")
        if raw.shape[0] < 2:
            raise ValueError(f"Genome needs at least 2 genes, got {raw.shape[0]}")
        if not np.isin(raw, _ALLOWED).all():
            raise ValueError("Genome entries must be -1, 0 or +1")
        object.__setattr__(self, "entries", _frozen(raw))

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    @property
    def edge_count(self) -> int:
        """Number of nonzero entries (directed interactions)."""
        return int(np.count_nonzero(self.entries))

    def regulators(self, gene: int) -> int:
        """Number of genes regulating ``gene`` (nonzero entries in its column)."""
        return int(np.count_nonzero(self.entries[:, gene]))

    def with_entries(self, entries: np.ndarray) -> "Genome":
        return Genome(entries)

    @classmethod
    def zeros(cls, n: int) -> "Genome":
        return cls(np.zeros((n, n), dtype=np.int8))

    @classmethod
    def identity(cls, n: int) -> "Genome":
        return cls(np.eye(n, dtype=np.int8))

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"n={self.n}"]
        lines.extend(" ".join(str(int(v)) for v in row) for row in self.entries)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Genome":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n="):
            raise GenomeFormatError("Genome text must start with a 'n=<N>' header line")
        try:
            n = int(lines[0][2:])
        except ValueError as exc:
            raise GenomeFormatError(f"Bad genome header: {lines[0]!r}") from exc
        rows = lines[1:]
        if len(rows) != n:
            raise GenomeFormatError(f"Expected {n} matrix rows, found {len(rows)}")
        matrix = []
        for lineno, row in enumerate(rows, start=2):
            try:
                values = [int(tok) for tok in row.split()]
            except ValueError as exc:
                raise GenomeFormatError(f"Line {lineno}: non-integer entry") from exc
            if len(values) != n:
                raise GenomeFormatError(f"Line {lineno}: expected {n} values, found {len(values)}")
            matrix.append(values)
        return cls(np.array(matrix, dtype=np.int8))

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_text(), encoding="utf-8")
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Genome":
        return cls.from_text(Path(path).read_text(encoding="utf-8"))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Genome):
            return NotImplemented
        return bool(np.array_equal(self.entries, other.entries))

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __repr__(self) -> str:
        return f"Genome(n={self.n}, edges={self.edge_count})"


@dataclass(frozen=True, eq=False)
class Pattern:
    """Gene activity pattern: a vector over {-1, +1}."""

    states: np.ndarray

    def __post_init__(self) -> None:
        raw = np.asarray(self.states)
        if raw.ndim != 1 or raw.size == 0:
            raise ValueError("Pattern must be a non-empty vector")
        if not np.isin(raw, (-1, 1)).all():
            raise ValueError("Pattern elements must be -1 or +1")
        object.__setattr__(self, "states", _frozen(raw))

    def __len__(self) -> int:
        return int(self.states.shape[0])

    def __neg__(self) -> "Pattern":
        return Pattern(-self.states)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return bool(np.array_equal(self.states, other.states))

    def __hash__(self) -> int:
        return hash(self.states.tobytes())

    def to_string(self) -> str:
        """Compact form, e.g. ``+-+-``."""
        return "".join("+" if v > 0 else "-" for v in self.states)

    @classmethod
    def from_string(cls, text: str) -> "Pattern":
        """Parse ``+-+-`` or whitespace/comma separated ``+1 -1`` forms."""
        text = text.strip()
        if not text:
            raise ValueError("Empty pattern string")
        if set(text) <= {"+", "-"}:
            return cls(np.array([1 if c == "+" else -1 for c in text], dtype=np.int8))
        tokens = text.replace(",", " ").split()
        try:
            return cls(np.array([int(tok) for tok in tokens], dtype=np.int8))
        except ValueError as exc:
            raise ValueError(f"Cannot parse pattern {text!r}") from exc

    @classmethod
    def of(cls, values: Iterable[int]) -> "Pattern":
        return cls(np.array(list(values), dtype=np.int8))

    def __repr__(self) -> str:
        return f"Pattern({self.to_string()})"


def check_dimensions(genome: Genome, *patterns: Pattern) -> None:
    for pattern in patterns:
        if len(pattern) != genome.n:
            raise DimensionMismatchError(
                f"Pattern of length {len(pattern)} does not fit genome with n={genome.n}"
            )


def stack_genomes(genomes: Sequence[Genome]) -> np.ndarray:
    """Stack genomes into a (B, N, N) int8 tensor."""
    if not genomes:
        raise ValueError("No genomes to stack")
    return np.stack([g.entries for g in genomes])
