"""Fixed-partition modularity of regulatory networks."""

from grnevo.modularity.partition import Partition, derive_partition
from grnevo.modularity.qscore import EdgeCollapse, q_score, undirected_counts

__all__ = ["EdgeCollapse", "Partition", "derive_partition", "q_score", "undirected_counts"]
