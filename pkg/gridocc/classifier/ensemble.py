"""
Three-replicate voting ensemble with fuzzy-entropy replicate selection.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from ..core.errors import SchemaError
from ..dissimilarity.space import Pattern
from .fuzzy import fuzzy_entropy
from .model import Decision, OccModel

logger = logging.getLogger(__name__)

REPLICATES = 3


@dataclass
class Ensemble:
    """
    Replicates trained with the same genome and different k-medoids seeds.

    Hard labels are decided by majority vote; the soft score comes from the
    replicate with the lowest validation fuzzy entropy.
    """

    replicates: List[OccModel]
    selected: int = 0
    validation_entropy: List[float] = field(default_factory=list)
    seeds: List[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.replicates:
            raise SchemaError("an ensemble needs at least one replicate")
        if not 0 <= self.selected < len(self.replicates):
            raise SchemaError(f"selected replicate {self.selected} out of range")
        names = {tuple(r.schema.names) for r in self.replicates}
        if len(names) != 1:
            raise SchemaError("replicates must share one feature schema")

    @property
    def k(self) -> int:
        return self.replicates[0].k

    @property
    def schema(self):
        return self.replicates[0].schema

    @property
    def weights(self) -> np.ndarray:
        return self.replicates[0].weights

    @property
    def chosen(self) -> OccModel:
        return self.replicates[self.selected]

    def votes(self, patterns: Sequence[Pattern]) -> np.ndarray:
        """(n_replicates, n) hard labels."""
        rows = []
        for replicate in self.replicates:
            winners, distances = replicate.nearest(patterns)
            rows.append(replicate.hard_from(winners, distances))
        return np.vstack(rows) if rows else np.zeros((0, len(patterns)), dtype=np.int64)

    def decide(self, patterns: Sequence[Pattern]) -> List[Decision]:
        if len(patterns) == 0:
            return []
        votes = self.votes(patterns)
        majority = (2 * votes.sum(axis=0) > votes.shape[0]).astype(np.int64)
        soft = self.chosen.decide(patterns)
        return [
            Decision(hard=int(h), membership=d.membership, cluster=d.cluster, dissimilarity=d.dissimilarity)
            for h, d in zip(majority, soft)
        ]

    def memberships(self, patterns: Sequence[Pattern]) -> np.ndarray:
        return np.array([d.membership for d in self.chosen.decide(patterns)])


def ensemble_classify(x: Pattern, e: Ensemble) -> Decision:
    return e.decide([x])[0]


def select_replicate(validation_memberships: Sequence[Sequence[float]]) -> int:
    """Index of the membership list with the lowest fuzzy entropy; ties go to the lowest index."""
    entropies = [fuzzy_entropy(mu) for mu in validation_memberships]
    return int(np.argmin(entropies))


def select_by_entropy(e: Ensemble, validation: Sequence[Pattern]) -> Ensemble:
    """Store per-replicate validation fuzzy entropy and point `selected` at the minimum."""
    memberships = [np.array([d.membership for d in r.decide(validation)]) for r in e.replicates]
    e.validation_entropy = [fuzzy_entropy(mu) for mu in memberships]
    e.selected = select_replicate(memberships)
    logger.debug(f"Replicate fuzzy entropies {e.validation_entropy}; selected {e.selected}")
    return e
