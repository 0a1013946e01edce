"""
Synthetic problems: Gaussian target clusters on the unit square and uniform non-targets.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..dissimilarity.space import Pattern
from ..schemas.features import FeatureDescriptor, FeatureKind, FeatureSchema, Scaling
from ..schemas.stats import NormalizationStats
from .datasets import LabeledSet, SplitSets

logger = logging.getLogger(__name__)

DEFAULT_CENTERS = [(0.2, 0.2), (0.5, 0.8), (0.8, 0.3)]


class SyntheticSpec(BaseModel):
    """Schema for a Gaussian-targets / uniform-non-targets problem on [0, 1]^2."""
    model_config = ConfigDict(extra="forbid")

    centers: List[Tuple[float, float]] = Field(default_factory=lambda: list(DEFAULT_CENTERS))
    spreads: List[float] = Field(default_factory=lambda: [0.03, 0.03, 0.03])
    n_train: int = Field(150, ge=0, description="Training targets (all clusters)")
    n_validation: int = Field(150, ge=0, description="Validation targets")
    n_test: int = Field(150, ge=0, description="Test targets")
    n_nontarget: int = Field(150, ge=0, description="Non-targets in each of validation and test")
    nontarget_margin: float = Field(0.0, ge=0.0, description="Minimum distance of non-targets from every center")
    seed: int = 0

    @model_validator(mode="after")
    def _check_clusters(self):
        if not self.centers:
            raise ValueError("at least one cluster center is required")
        if len(self.spreads) != len(self.centers):
            raise ValueError(f"{len(self.centers)} centers but {len(self.spreads)} spreads")
        if any(s <= 0 for s in self.spreads):
            raise ValueError("spreads must be positive")
        return self


def plane_schema() -> FeatureSchema:
    """Two already-normalized quantitative coordinates."""
    return FeatureSchema(features=[
        FeatureDescriptor(name="x", kind=FeatureKind.QUANTITATIVE, scaling=Scaling.NONE),
        FeatureDescriptor(name="y", kind=FeatureKind.QUANTITATIVE, scaling=Scaling.NONE),
    ])


def _sample_clusters(spec: SyntheticSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    k = len(spec.centers)
    # round-robin cluster sizes so every cluster gets n // k or n // k + 1 points
    sizes = [n // k + (1 if i < n % k else 0) for i in range(k)]
    chunks = []
    for center, spread, size in zip(spec.centers, spec.spreads, sizes):
        chunks.append(rng.normal(loc=center, scale=spread, size=(size, 2)))
    points = np.vstack(chunks) if chunks else np.zeros((0, 2))
    return np.clip(points, 0.0, 1.0)


def _sample_uniform(spec: SyntheticSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    centers = np.asarray(spec.centers, dtype=np.float64)
    out = np.zeros((0, 2))
    while out.shape[0] < n:
        batch = rng.uniform(0.0, 1.0, size=(max(n, 16), 2))
        if spec.nontarget_margin > 0:
            gaps = np.linalg.norm(batch[:, None, :] - centers[None, :, :], axis=2).min(axis=1)
            batch = batch[gaps > spec.nontarget_margin]
        out = np.vstack([out, batch])
    return out[:n]


def _as_patterns(points: np.ndarray) -> List[Pattern]:
    return [Pattern(values=(float(x), float(y))) for x, y in points]


def generate_gaussian_clusters(spec: SyntheticSpec) -> SplitSets:
    """
    Sample the train/validation/test sets of the Gaussian cluster problem.

    Targets come from isotropic Gaussians clipped to [0, 1]^2; validation and
    test additionally receive n_nontarget uniform non-targets each.
    """
    root = np.random.SeedSequence(spec.seed)
    streams = [np.random.default_rng(s) for s in root.spawn(5)]
    train = LabeledSet.of_targets(_as_patterns(_sample_clusters(spec, spec.n_train, streams[0])))
    validation = LabeledSet.of_targets(_as_patterns(_sample_clusters(spec, spec.n_validation, streams[1])))
    test = LabeledSet.of_targets(_as_patterns(_sample_clusters(spec, spec.n_test, streams[2])))
    if spec.n_nontarget:
        validation = validation.concat(LabeledSet.of_nontargets(_as_patterns(_sample_uniform(spec, spec.n_nontarget, streams[3]))))
        test = test.concat(LabeledSet.of_nontargets(_as_patterns(_sample_uniform(spec, spec.n_nontarget, streams[4]))))
    logger.info(
        f"Generated Gaussian problem: {len(train)} train, {len(validation)} validation, "
        f"{len(test)} test patterns ({len(spec.centers)} clusters, seed {spec.seed})"
    )
    return SplitSets(train=train, validation=validation, test=test)


def generate_uniform_nontargets(
    schema: FeatureSchema,
    stats: NormalizationStats,
    n: int,
    seed: int,
) -> List[Pattern]:
    """
    Draw every feature value independently and uniformly.

    Args:
        schema: Feature schema of the target set
        stats: Statistics fitted on the target set (missing rates, ranges, sequence profiles)
        n: Number of patterns
        seed: Generator seed

    Returns:
        n normalized patterns
    """
    if n <= 0:
        return []
    rng = np.random.default_rng(seed)
    columns = []
    for descriptor in schema.features:
        name = descriptor.name
        kind = descriptor.kind
        if kind == FeatureKind.CATEGORICAL:
            picks = rng.integers(0, len(descriptor.domain), size=n)
            columns.append([descriptor.domain[i] for i in picks])
        elif kind == FeatureKind.CIRCULAR:
            columns.append([int(v) for v in rng.integers(0, descriptor.period + 1, size=n)])
        elif kind in (FeatureKind.QUANTITATIVE, FeatureKind.SPECIAL):
            lo, hi = _uniform_range(descriptor, stats)
            values = rng.uniform(lo, hi, size=n)
            if kind == FeatureKind.SPECIAL:
                missing = rng.random(size=n) < stats.missing_rate.get(name, 0.0)
                columns.append([None if m else float(v) for v, m in zip(values, missing)])
            else:
                columns.append([float(v) for v in values])
        else:
            profile = stats.sequences.get(name)
            min_len = profile.min_length if profile else 0
            max_len = profile.max_length if profile else 0
            lo = profile.min_value if profile else 0.0
            hi = profile.max_value if profile else 0.0
            lengths = rng.integers(min_len, max_len + 1, size=n)
            columns.append([tuple(float(e) for e in np.sort(rng.uniform(lo, hi, size=int(size)))) for size in lengths])
    return [Pattern(values=tuple(col[i] for col in columns)) for i in range(n)]


def _uniform_range(descriptor: FeatureDescriptor, stats: NormalizationStats) -> Tuple[float, float]:
    if descriptor.scaling == Scaling.STANDARD:
        observed: Optional[object] = stats.value_range.get(descriptor.name)
        if observed is not None:
            return observed.min, observed.max
    return 0.0, 1.0
