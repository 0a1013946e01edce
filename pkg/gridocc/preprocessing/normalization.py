"""
Affine and standard normalization, fitted once and re-applied at inference.
"""
import logging
from typing import Any, List, Sequence

import numpy as np
from sklearn.preprocessing import StandardScaler

from ..core.errors import StatsError
from ..dissimilarity.space import Pattern
from ..schemas.features import FeatureKind, FeatureSchema, Scaling
from ..schemas.stats import AffineStats, NormalizationStats, SequenceProfile, StandardStats

logger = logging.getLogger(__name__)


def affine_normalize(c: float, m: float, M: float, clamp: bool = True) -> float:
    """
    Map c from [m, M] onto [0, 1].

    A degenerate range (M == m) maps everything to 0. Values outside the
    fitted range are clamped unless clamp is False.
    """
    if M < m:
        raise StatsError(f"invalid range: max {M} below min {m}")
    if M == m:
        return 0.0
    value = (c - m) / (M - m)
    if clamp:
        value = min(1.0, max(0.0, value))
    return float(value)


def standardize(column: Sequence[float]) -> List[float]:
    """Zero mean, unit variance; a constant column becomes all zeros."""
    values = np.asarray(column, dtype=np.float64).reshape(-1, 1)
    if values.shape[0] == 0:
        raise StatsError("cannot standardize an empty column")
    scaled = StandardScaler().fit_transform(values)
    return [float(v) for v in scaled.ravel()]


def fit_stats(schema: FeatureSchema, rows: Sequence[Sequence[Any]]) -> NormalizationStats:
    """
    Fit normalization statistics and the target-set profile on raw rows.

    Args:
        schema: Feature schema of the rows
        rows: Raw values aligned to the schema (None marks "not applicable")

    Returns:
        NormalizationStats ready to be persisted with the model
    """
    stats = NormalizationStats()
    n = len(rows)
    for j, descriptor in enumerate(schema.features):
        name = descriptor.name
        column = [row[j] for row in rows]
        if descriptor.is_numeric:
            present = np.array([v for v in column if v is not None], dtype=np.float64)
            if descriptor.kind == FeatureKind.SPECIAL:
                stats.missing_rate[name] = (n - present.size) / n if n else 0.0
            if present.size == 0:
                logger.warning(f"Feature '{name}' has no applicable values; using degenerate range")
                present = np.zeros(1)
            if descriptor.scaling == Scaling.AFFINE:
                stats.affine[name] = AffineStats(min=float(present.min()), max=float(present.max()))
                if present.min() == present.max():
                    logger.warning(f"Feature '{name}' is constant; it normalizes to 0")
            elif descriptor.scaling == Scaling.STANDARD:
                stats.standard[name] = StandardStats(mean=float(present.mean()), std=float(present.std()))
        elif descriptor.kind == FeatureKind.TIMESERIES:
            lengths = [len(s) for s in column] or [0]
            events = [e for s in column for e in s]
            stats.sequences[name] = SequenceProfile(
                min_length=int(min(lengths)),
                max_length=int(max(lengths)),
                min_value=float(min(events)) if events else 0.0,
                max_value=float(max(events)) if events else 0.0,
            )
    # observed ranges of the normalized values, used by the non-target generator
    patterns = apply_stats(schema, rows, stats)
    for j, descriptor in enumerate(schema.features):
        if descriptor.is_numeric:
            values = [p.values[j] for p in patterns if p.values[j] is not None] or [0.0]
            stats.value_range[descriptor.name] = AffineStats(min=float(min(values)), max=float(max(values)))
    logger.info(f"Fitted normalization statistics on {n} rows, {schema.arity} features")
    return stats


def _normalize_value(descriptor, value: Any, stats: NormalizationStats) -> Any:
    if value is None:
        return None
    name = descriptor.name
    if descriptor.scaling == Scaling.AFFINE:
        bounds = stats.affine.get(name)
        if bounds is None:
            raise StatsError(f"no affine statistics for feature '{name}'")
        return affine_normalize(float(value), bounds.min, bounds.max)
    if descriptor.scaling == Scaling.STANDARD:
        moments = stats.standard.get(name)
        if moments is None:
            raise StatsError(f"no standard statistics for feature '{name}'")
        if moments.std == 0.0:
            return 0.0
        return float((float(value) - moments.mean) / moments.std)
    return float(value)


def apply_stats(
    schema: FeatureSchema,
    rows: Sequence[Sequence[Any]],
    stats: NormalizationStats,
    offset: int = 0,
) -> List[Pattern]:
    """Normalize raw rows into patterns; identical at train and inference time."""
    patterns = []
    for i, row in enumerate(rows):
        schema.validate_pattern(row, row=offset + i)
        values = []
        for descriptor, value in zip(schema.features, row):
            if descriptor.is_numeric:
                values.append(_normalize_value(descriptor, value, stats))
            elif descriptor.kind == FeatureKind.TIMESERIES:
                values.append(tuple(float(e) for e in value))
            else:
                values.append(value)
        patterns.append(Pattern(values=tuple(values)))
    return patterns


def normalized_schema(schema: FeatureSchema) -> FeatureSchema:
    """Same features with scaling 'none', describing already-normalized patterns."""
    return FeatureSchema(features=[
        d.model_copy(update={"scaling": Scaling.NONE}) if d.is_numeric else d
        for d in schema.features
    ])

