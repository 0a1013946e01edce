"""
Partitioning of the target training set.
"""
from .kmedoids import (
    ExtentStrategy,
    Partition,
    minsod_representative,
    k_medoids,
    cluster_extent,
    partition_extents,
)

__all__ = [
    "ExtentStrategy",
    "Partition",
    "minsod_representative",
    "k_medoids",
    "cluster_extent",
    "partition_extents",
]
