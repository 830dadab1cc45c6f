"""Deterministic seed derivation.

Seeds are derived by hashing a key path with BLAKE2b, so a child seed depends
only on its own path: ``derive_seed(master, "crossover-exp", 3)`` is the same
whatever other experiments, treatments or trials exist.
"""

from __future__ import annotations

import hashlib
from typing import Dict, Iterable, Union

Key = Union[int, str]


def derive_seed(root: int, *path: Key) -> int:
    """64-bit seed for ``path`` under ``root``."""
    text = "/".join([str(int(root))] + [str(part) for part in path])
    digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def stream_seeds(trial_seed: int, names: Iterable[str]) -> Dict[str, int]:
    """One seed per named random stream of a trial."""
    return {name: derive_seed(trial_seed, "stream", name) for name in names}
