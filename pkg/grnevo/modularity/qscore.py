"""Newman Q modularity of a genome under a fixed partition.

The signed directed matrix is read as an undirected unweighted graph:

    Q = sum_i [ l_i / L - (d_i / 2L) ** 2 ]

with L the edge count, l_i the edges inside module i and d_i the degree sum
of module i. A self-loop counts once toward L and l_i and twice toward the
degree of its gene.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional, Union

import numpy as np

from grnevo.modularity.partition import Partition
from grnevo.network.genome import Genome


class EdgeCollapse(str, Enum):
    UNION = "union"  # reciprocal regulation is one undirected edge
    MULTI = "multi"  # every nonzero entry is its own edge


def undirected_counts(entries: np.ndarray, collapse: EdgeCollapse = EdgeCollapse.UNION):
    """Split a genome matrix into symmetric off-diagonal edge counts and self-loops."""
    present = np.asarray(entries) != 0
    loops = np.diag(present).astype(np.int64)
    off = present & ~np.eye(present.shape[0], dtype=bool)
    if EdgeCollapse(collapse) is EdgeCollapse.UNION:
        pairs = (off | off.T).astype(np.int64)
    else:
        pairs = off.astype(np.int64) + off.T.astype(np.int64)
    return pairs, loops


def q_score(
    genome: Union[Genome, np.ndarray],
    partition: Partition,
    collapse: Union[EdgeCollapse, str] = EdgeCollapse.UNION,
) -> Optional[float]:
    """Q of ``genome`` under ``partition``; ``None`` when the graph has no edges."""
    entries = genome.entries if isinstance(genome, Genome) else np.asarray(genome)
    partition.check_covers(entries.shape[0])
    pairs, loops = undirected_counts(entries, EdgeCollapse(collapse))

    total = int(np.triu(pairs, 1).sum() + loops.sum())
    if total == 0:
        return None

    degree = pairs.sum(axis=1) + 2 * loops
    upper = np.triu(pairs, 1)
    labels = partition.labels()

    q = 0.0
    for module in range(partition.k):
        inside = labels == module
        block = upper[np.ix_(inside, inside)]
        l_i = int(block.sum() + loops[inside].sum())
        d_i = int(degree[inside].sum())
        q += l_i / total - (d_i / (2.0 * total)) ** 2
    return float(q)
