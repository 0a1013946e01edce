"""
One-class model: representatives with decision regions, hard and soft decisions.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..clustering.kmedoids import ExtentStrategy
from ..core.errors import SchemaError
from ..dissimilarity.dtw import TsNormalizer
from ..dissimilarity.space import FeatureSpace, Pattern, as_weight_vector, weighted_norm
from ..schemas.features import FeatureSchema
from ..schemas.stats import NormalizationStats
from .fuzzy import sigmoid_membership

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decision:
    hard: int
    membership: float
    cluster: int
    dissimilarity: float


@dataclass
class OccModel:
    """
    k representatives, their extents delta and tolerances sigma.

    A pattern is accepted when its dissimilarity to the nearest representative
    is at most delta + sigma of that cluster. The soft decision is a sigmoid
    with a = delta and b = delta + sigma / 2.
    """

    schema: FeatureSchema
    weights: np.ndarray
    representatives: List[Pattern]
    extents: np.ndarray
    sigmas: np.ndarray
    normalizer: TsNormalizer = field(default_factory=TsNormalizer)
    stats: Optional[NormalizationStats] = None
    extent_strategy: ExtentStrategy = ExtentStrategy.MEAN

    def __post_init__(self):
        self.weights = as_weight_vector(self.weights, self.schema.arity)
        self.extents = np.asarray(self.extents, dtype=np.float64).reshape(-1)
        self.sigmas = np.asarray(self.sigmas, dtype=np.float64).reshape(-1)
        k = len(self.representatives)
        if k == 0:
            raise SchemaError("a model needs at least one representative")
        if self.extents.size != k or self.sigmas.size != k:
            raise SchemaError(f"{k} representatives but {self.extents.size} extents and {self.sigmas.size} tolerances")
        if np.any(self.extents < 0) or np.any(self.sigmas < 0):
            raise SchemaError("extents and tolerances must be non-negative")
        self._space = FeatureSpace(self.schema, self.normalizer)
        self._encoded_reps = self._space.encode(self.representatives)

    @property
    def k(self) -> int:
        return len(self.representatives)

    @property
    def a(self) -> np.ndarray:
        return self.extents

    @property
    def b(self) -> np.ndarray:
        return self.extents + self.sigmas / 2.0

    @property
    def bounds(self) -> np.ndarray:
        return self.extents + self.sigmas

    def dissimilarities(self, patterns: Sequence[Pattern]) -> np.ndarray:
        """(n, k) composite dissimilarities to every representative."""
        for i, pattern in enumerate(patterns):
            self.schema.validate_pattern(pattern.values, row=i)
        encoded = self._space.encode(patterns)
        return weighted_norm(self._space.component_tensor(encoded, self._encoded_reps), self.weights)

    def nearest(self, patterns: Sequence[Pattern]) -> Tuple[np.ndarray, np.ndarray]:
        """Winning cluster (lowest index on ties) and its dissimilarity for every pattern."""
        D = self.dissimilarities(patterns)
        return self.nearest_from(D)

    @staticmethod
    def nearest_from(D: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        winners = np.argmin(D, axis=1)
        return winners, D[np.arange(D.shape[0]), winners]

    def hard_from(self, winners: np.ndarray, distances: np.ndarray) -> np.ndarray:
        return (distances <= self.bounds[winners]).astype(np.int64)

    def membership_from(self, winners: np.ndarray, distances: np.ndarray) -> np.ndarray:
        return np.atleast_1d(sigmoid_membership(distances, self.a[winners], self.b[winners]))

    def decide(self, patterns: Sequence[Pattern]) -> List[Decision]:
        winners, distances = self.nearest(patterns)
        hard = self.hard_from(winners, distances)
        soft = self.membership_from(winners, distances)
        return [
            Decision(hard=int(h), membership=float(mu), cluster=int(c), dissimilarity=float(d))
            for h, mu, c, d in zip(hard, soft, winners, distances)
        ]


def nearest_representative(x: Pattern, model: OccModel) -> Tuple[int, float]:
    winners, distances = model.nearest([x])
    return int(winners[0]), float(distances[0])


def hard_classify(x: Pattern, model: OccModel) -> int:
    """1 (target) iff d(x, c*) <= delta* + sigma*."""
    winners, distances = model.nearest([x])
    return int(model.hard_from(winners, distances)[0])


def membership(x: Pattern, model: OccModel) -> float:
    winners, distances = model.nearest([x])
    return float(model.membership_from(winners, distances)[0])
