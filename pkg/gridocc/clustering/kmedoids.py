"""
k-medoids (Voronoi iteration) over a precomputed dissimilarity matrix with MinSOD representatives.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence

import numpy as np

from ..core.errors import ClusteringError

logger = logging.getLogger(__name__)

MAX_ITERATIONS = 100


class ExtentStrategy(str, Enum):
    MEAN = "mean"
    MAX = "max"
    STD = "std"


@dataclass(frozen=True)
class Partition:
    """
    Hard partition of order k of a training set.

    labels[i] is the cluster of pattern i; representatives[j] is the index
    of the MinSOD member of cluster j. costs holds the total dissimilarity
    to the representatives after every assignment step.
    """

    labels: np.ndarray
    representatives: tuple
    costs: tuple = ()

    @property
    def k(self) -> int:
        return len(self.representatives)

    def members(self, j: int) -> np.ndarray:
        return np.flatnonzero(self.labels == j)

    @property
    def clusters(self) -> List[np.ndarray]:
        return [self.members(j) for j in range(self.k)]

    def cost(self, D: np.ndarray) -> float:
        """Total dissimilarity of the patterns to their representatives."""
        return _total_cost(D, self.labels, np.asarray(self.representatives))


def _total_cost(D: np.ndarray, labels: np.ndarray, representatives: np.ndarray) -> float:
    return float(D[np.arange(labels.size), representatives[labels]].sum())


def minsod_representative(members: Sequence[int], D: np.ndarray) -> int:
    """
    Member minimizing the sum of dissimilarities to the other members.

    Args:
        members: Indices into D
        D: Square dissimilarity matrix

    Returns:
        The MinSOD member index; ties go to the lowest index
    """
    idx = np.sort(np.asarray(members, dtype=np.int64))
    if idx.size == 0:
        raise ClusteringError("cannot pick a representative of an empty cluster")
    sod = D[np.ix_(idx, idx)].sum(axis=1)
    # argmin returns the first minimum; idx is sorted
    return int(idx[int(np.argmin(sod))])


def _assign(D: np.ndarray, representatives: np.ndarray) -> np.ndarray:
    labels = np.argmin(D[:, representatives], axis=1)
    # representatives always win their own assignment, duplicates included
    labels[representatives] = np.arange(representatives.size)
    return labels


def _repair_empty(D: np.ndarray, labels: np.ndarray, representatives: np.ndarray) -> np.ndarray:
    for j in range(representatives.size):
        if np.any(labels == j):
            continue
        gaps = D[np.arange(labels.size), representatives[labels]].copy()
        gaps[representatives] = -np.inf
        farthest = int(np.argmax(gaps))
        logger.debug(f"Cluster {j} empty; reseeding with pattern {farthest}")
        representatives[j] = farthest
        labels[farthest] = j
    return labels


def k_medoids(D: np.ndarray, k: int, seed: int, max_iter: int = MAX_ITERATIONS) -> Partition:
    """
    Partition n patterns into k non-empty clusters.

    Representatives start as k distinct members drawn uniformly at random;
    the assignment and MinSOD steps alternate until the representatives no
    longer change or max_iter is reached. Empty clusters are reseeded with
    the pattern farthest from its current representative.

    Args:
        D: Symmetric (n, n) dissimilarity matrix of the training set
        k: Partition order, 1 <= k <= n
        seed: Seed of the initialization

    Returns:
        Partition with exactly k clusters
    """
    D = np.asarray(D, dtype=np.float64)
    n = D.shape[0]
    if D.ndim != 2 or D.shape[1] != n:
        raise ClusteringError(f"dissimilarity matrix must be square, got {D.shape}")
    if not 1 <= k <= n:
        raise ClusteringError(f"k={k} out of range [1, {n}]")

    rng = np.random.default_rng(seed)
    representatives = np.sort(rng.choice(n, size=k, replace=False)).astype(np.int64)
    labels = _assign(D, representatives)
    costs = []
    for iteration in range(max_iter):
        labels = _repair_empty(D, labels, representatives)
        costs.append(_total_cost(D, labels, representatives))
        updated = np.array([minsod_representative(np.flatnonzero(labels == j), D) for j in range(k)], dtype=np.int64)
        if np.array_equal(updated, representatives):
            break
        representatives = updated
        labels = _assign(D, representatives)
    else:
        logger.debug(f"k-medoids stopped after {max_iter} iterations without settling")
    labels = _repair_empty(D, labels, representatives)
    costs.append(_total_cost(D, labels, representatives))
    return Partition(
        labels=labels.astype(np.int64),
        representatives=tuple(int(r) for r in representatives),
        costs=tuple(costs),
    )


def cluster_extent(
    members: Sequence[int],
    representative: int,
    D: np.ndarray,
    strategy: ExtentStrategy = ExtentStrategy.MEAN,
) -> float:
    """Spread of a cluster around its representative (mean, max or std of member distances)."""
    idx = np.asarray(members, dtype=np.int64)
    if idx.size == 0:
        raise ClusteringError("cannot measure the extent of an empty cluster")
    distances = D[representative, idx]
    strategy = ExtentStrategy(strategy)
    if strategy == ExtentStrategy.MAX:
        return float(distances.max())
    if strategy == ExtentStrategy.STD:
        return float(distances.std())
    if idx.size == 1:
        return 0.0
    # sum includes the representative's own zero term
    return float(distances.sum() / (idx.size - 1))


def partition_extents(partition: Partition, D: np.ndarray, strategy: ExtentStrategy = ExtentStrategy.MEAN) -> np.ndarray:
    return np.array([
        cluster_extent(partition.members(j), partition.representatives[j], D, strategy)
        for j in range(partition.k)
    ])
