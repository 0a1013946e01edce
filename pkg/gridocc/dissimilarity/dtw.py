"""
Dynamic time warping over outage event sequences and per-feature normalization.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numba as nb
import numpy as np

logger = logging.getLogger(__name__)

jitkw = {
    "nopython": True,
    "nogil": True,
    "cache": True,
}


@nb.jit(**jitkw)
def _dtw_cost(x, y):
    # symmetric three-step recursion, no window, local cost |x_i - y_j|
    n = x.shape[0]
    m = y.shape[0]
    previous = np.full(m + 1, np.inf)
    current = np.full(m + 1, np.inf)
    previous[0] = 0.0
    for i in range(1, n + 1):
        current[0] = np.inf
        for j in range(1, m + 1):
            best = previous[j - 1]
            if previous[j] < best:
                best = previous[j]
            if current[j - 1] < best:
                best = current[j - 1]
            current[j] = abs(x[i - 1] - y[j - 1]) + best
        for j in range(m + 1):
            previous[j] = current[j]
    return previous[m]


@nb.jit(**jitkw)
def _pairwise(values_a, offsets_a, values_b, offsets_b, symmetric, empty_cost):
    na = offsets_a.shape[0] - 1
    nb_ = offsets_b.shape[0] - 1
    out = np.zeros((na, nb_))
    for i in range(na):
        xa = values_a[offsets_a[i]:offsets_a[i + 1]]
        start = i + 1 if symmetric else 0
        for j in range(start, nb_):
            yb = values_b[offsets_b[j]:offsets_b[j + 1]]
            if xa.shape[0] == 0 and yb.shape[0] == 0:
                cost = 0.0
            elif xa.shape[0] == 0 or yb.shape[0] == 0:
                cost = empty_cost
            else:
                cost = _dtw_cost(xa, yb)
            out[i, j] = cost
            if symmetric:
                out[j, i] = cost
    return out


def _flatten(sequences: Sequence[Sequence[float]]) -> Tuple[np.ndarray, np.ndarray]:
    lengths = np.array([len(s) for s in sequences], dtype=np.int64)
    offsets = np.zeros(len(sequences) + 1, dtype=np.int64)
    np.cumsum(lengths, out=offsets[1:])
    if offsets[-1] == 0:
        return np.zeros(0, dtype=np.float64), offsets
    values = np.concatenate([np.asarray(s, dtype=np.float64) for s in sequences if len(s)])
    return values, offsets


def dtw(x: Sequence[float], y: Sequence[float], empty_cost: float = np.inf) -> float:
    """
    Raw DTW cost between two event sequences.

    Two empty sequences cost 0. An empty against a non-empty sequence costs
    empty_cost: +inf while fitting maxima, the fitted maximum once a
    TsNormalizer exists (see TsNormalizer.dtw).
    """
    if len(x) == 0 and len(y) == 0:
        return 0.0
    if len(x) == 0 or len(y) == 0:
        return float(empty_cost)
    return float(_dtw_cost(np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)))


def pairwise_dtw(
    a: Sequence[Sequence[float]],
    b: Sequence[Sequence[float]] = None,
    empty_cost: float = np.inf,
) -> np.ndarray:
    """Raw DTW matrix between two lists of sequences (symmetric when b is omitted)."""
    values_a, offsets_a = _flatten(a)
    if b is None:
        return _pairwise(values_a, offsets_a, values_a, offsets_a, True, float(empty_cost))
    values_b, offsets_b = _flatten(b)
    return _pairwise(values_a, offsets_a, values_b, offsets_b, False, float(empty_cost))


@dataclass(frozen=True)
class TsNormalizer:
    """Per timeseries feature maximum raw DTW value over the fitting dataset."""

    maxima: Dict[str, float] = field(default_factory=dict)

    def maximum(self, name: str) -> float:
        return self.maxima.get(name, 1.0)

    def dtw(self, name: str, x: Sequence[float], y: Sequence[float]) -> float:
        """Finite raw DTW: an empty against a non-empty sequence costs the fitted maximum."""
        return dtw(x, y, empty_cost=self.maximum(name))

    def pairwise(self, name: str, a, b=None) -> np.ndarray:
        return pairwise_dtw(a, b, empty_cost=self.maximum(name))

    def normalize(self, name: str, raw):
        """Divide by the stored maximum and clamp to [0, 1]; non-finite values map to 1."""
        maximum = self.maximum(name)
        scaled = np.asarray(raw, dtype=np.float64) / maximum
        scaled = np.where(np.isfinite(scaled), scaled, 1.0)
        result = np.clip(scaled, 0.0, 1.0)
        return float(result) if result.ndim == 0 else result


def fit_ts_normalizer(schema, patterns: List) -> TsNormalizer:
    """
    Fit the maximum pairwise DTW of every timeseries feature.

    Args:
        schema: FeatureSchema the patterns conform to
        patterns: Fitting dataset

    Returns:
        TsNormalizer; features whose maximum is 0 (or with fewer than two
        patterns) store the sentinel 1
    """
    from ..schemas.features import FeatureKind

    maxima = {}
    for j in schema.indices_of(FeatureKind.TIMESERIES):
        name = schema.features[j].name
        sequences = [p.values[j] for p in patterns]
        maximum = 0.0
        if len(sequences) >= 2:
            raw = pairwise_dtw(sequences)
            finite = raw[np.isfinite(raw)]
            if finite.size:
                maximum = float(finite.max())
        if maximum <= 0.0:
            logger.debug(f"Timeseries feature '{name}' has no spread, storing sentinel 1")
            maximum = 1.0
        maxima[name] = maximum
    logger.info(f"Fitted DTW maxima for {len(maxima)} timeseries features")
    return TsNormalizer(maxima=maxima)
