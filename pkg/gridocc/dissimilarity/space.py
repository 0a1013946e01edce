"""
Patterns over the heterogeneous product space and the weighted composite dissimilarity.
"""
import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence

import numpy as np

from ..core.errors import DomainError, SchemaError
from ..schemas.features import FeatureKind, FeatureSchema
from .dtw import TsNormalizer
from .kernels import circular_diff, simple_matching, special_diff

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Pattern:
    """
    One heterogeneous record aligned to a FeatureSchema.

    Values are labels (categorical), floats (quantitative), ints (circular),
    floats or None for "not applicable" (special) and tuples of
    non-negative floats (event sequences).
    """

    values: tuple

    @classmethod
    def of(cls, values: Sequence[Any]) -> "Pattern":
        frozen = tuple(tuple(float(e) for e in v) if isinstance(v, (list, tuple)) else v for v in values)
        return cls(values=frozen)

    def __len__(self) -> int:
        return len(self.values)


def as_weight_vector(w: Sequence[float], m: int) -> np.ndarray:
    """Validate a weight vector: length m, every component in [0, 1]."""
    weights = np.asarray(w, dtype=np.float64).reshape(-1)
    if weights.shape[0] != m:
        raise SchemaError(f"weight vector has {weights.shape[0]} components, schema has {m} features")
    if np.any(weights < 0.0) or np.any(weights > 1.0) or not np.all(np.isfinite(weights)):
        raise DomainError("weights must lie in [0, 1]")
    return weights


def _component(descriptor, x, y, norm: TsNormalizer) -> float:
    kind = descriptor.kind
    if kind == FeatureKind.QUANTITATIVE:
        return abs(float(x) - float(y))
    if kind == FeatureKind.CATEGORICAL:
        return simple_matching((x,), (y,))
    if kind == FeatureKind.CIRCULAR:
        return circular_diff(x, y, descriptor.period) / (descriptor.period / 2.0)
    if kind == FeatureKind.SPECIAL:
        return special_diff(x, y)
    return norm.normalize(descriptor.name, norm.dtw(descriptor.name, x, y))


def composite_dissimilarity(
    x: Pattern,
    y: Pattern,
    w: Sequence[float],
    norm: TsNormalizer,
    schema: FeatureSchema,
) -> float:
    """
    Weighted l2 norm of the feature-wise dissimilarities.

    Args:
        x: First pattern
        y: Second pattern
        w: Weights in [0, 1], one per feature
        norm: Fitted DTW maxima for the timeseries features
        schema: Schema both patterns conform to

    Returns:
        sqrt(sum_j w_j * (x_j - y_j)^2) with the kind-specific difference
    """
    weights = as_weight_vector(w, schema.arity)
    schema.validate_pattern(x.values)
    schema.validate_pattern(y.values)
    total = 0.0
    for j, descriptor in enumerate(schema.features):
        if weights[j] == 0.0:
            continue
        c = _component(descriptor, x.values[j], y.values[j], norm)
        total += weights[j] * c * c
    return float(np.sqrt(total))


class EncodedPatterns:
    """Column-wise numeric encoding of a pattern list for vectorized kernels."""

    def __init__(self, schema: FeatureSchema, patterns: Sequence[Pattern]):
        self.n = len(patterns)
        self.columns: List[Any] = []
        for j, descriptor in enumerate(schema.features):
            raw = [p.values[j] for p in patterns]
            kind = descriptor.kind
            if kind == FeatureKind.CATEGORICAL:
                codes = {label: i for i, label in enumerate(descriptor.domain)}
                self.columns.append(np.array([codes.get(v, -1) for v in raw], dtype=np.int64))
            elif kind == FeatureKind.CIRCULAR:
                self.columns.append(np.array(raw, dtype=np.int64))
            elif kind == FeatureKind.SPECIAL:
                self.columns.append(np.array([np.nan if v is None else v for v in raw], dtype=np.float64))
            elif kind == FeatureKind.QUANTITATIVE:
                self.columns.append(np.array(raw, dtype=np.float64))
            else:
                self.columns.append(list(raw))

    def __len__(self) -> int:
        return self.n


class FeatureSpace:
    """
    Schema plus fitted TS normalizer; computes per-feature dissimilarity tensors.

    Read-only after construction and safe to share between threads.
    """

    def __init__(self, schema: FeatureSchema, normalizer: Optional[TsNormalizer] = None):
        self.schema = schema
        self.normalizer = normalizer or TsNormalizer()

    @property
    def m(self) -> int:
        return self.schema.arity

    def encode(self, patterns: Sequence[Pattern]) -> EncodedPatterns:
        return EncodedPatterns(self.schema, patterns)

    def component_tensor(self, a: EncodedPatterns, b: Optional[EncodedPatterns] = None) -> np.ndarray:
        """
        Feature-wise dissimilarities between every pair of patterns.

        Args:
            a: Encoded rows
            b: Encoded columns; omitted means a against itself

        Returns:
            Array of shape (len(a), len(b), m) with values in [0, 1] for
            normalized inputs
        """
        symmetric = b is None
        b = a if symmetric else b
        out = np.empty((a.n, b.n, self.m), dtype=np.float64)
        for j, descriptor in enumerate(self.schema.features):
            ca, cb = a.columns[j], b.columns[j]
            kind = descriptor.kind
            if kind == FeatureKind.QUANTITATIVE:
                out[:, :, j] = np.abs(ca[:, None] - cb[None, :])
            elif kind == FeatureKind.CATEGORICAL:
                out[:, :, j] = (ca[:, None] != cb[None, :]).astype(np.float64)
            elif kind == FeatureKind.CIRCULAR:
                diff = np.abs(ca[:, None] - cb[None, :])
                out[:, :, j] = np.minimum(diff, descriptor.period - diff) / (descriptor.period / 2.0)
            elif kind == FeatureKind.SPECIAL:
                na = np.isnan(ca)[:, None]
                nb = np.isnan(cb)[None, :]
                diff = np.abs(np.nan_to_num(ca)[:, None] - np.nan_to_num(cb)[None, :])
                out[:, :, j] = np.where(na & nb, 0.0, np.where(na | nb, 1.0, diff))
            else:
                raw = self.normalizer.pairwise(descriptor.name, ca, None if symmetric else cb)
                out[:, :, j] = self.normalizer.normalize(descriptor.name, raw)
        return out

    def pairwise(self, a: Sequence[Pattern], b: Optional[Sequence[Pattern]] = None) -> np.ndarray:
        encoded_a = self.encode(a)
        encoded_b = None if b is None else self.encode(b)
        return self.component_tensor(encoded_a, encoded_b)


def weighted_norm(components: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Collapse a (..., m) component tensor into composite dissimilarities."""
    return np.sqrt(np.einsum("...m,m->...", components * components, w))


def dissimilarity_matrix(
    dataset: Sequence[Pattern],
    w: Sequence[float],
    norm: TsNormalizer,
    schema: FeatureSchema,
) -> np.ndarray:
    """Symmetric matrix D_ij = d(x_i, x_j) with zero diagonal."""
    if len(dataset) == 0:
        raise SchemaError("dissimilarity matrix needs a non-empty dataset")
    weights = as_weight_vector(w, schema.arity)
    for i, pattern in enumerate(dataset):
        schema.validate_pattern(pattern.values, row=i)
    space = FeatureSpace(schema, norm)
    matrix = weighted_norm(space.pairwise(dataset), weights)
    matrix = 0.5 * (matrix + matrix.T)
    np.fill_diagonal(matrix, 0.0)
    logger.debug(f"Computed {matrix.shape[0]}x{matrix.shape[1]} dissimilarity matrix")
    return matrix
