"""
Histogram entropy of weight vectors and normalized mutual information of two series.
"""
import logging
from typing import Sequence, Tuple

import numpy as np
from scipy.stats import entropy, gaussian_kde
from sklearn.metrics import mutual_info_score

from ..core.errors import EvaluationError

logger = logging.getLogger(__name__)

BINS = 10
MIN_SERIES_LENGTH = 10


def weight_entropy(w: Sequence[float]) -> float:
    """Shannon entropy (nats) of the 10-bin histogram of the weights on [0, 1]."""
    counts, _ = np.histogram(np.asarray(w, dtype=np.float64), bins=BINS, range=(0.0, 1.0))
    if counts.sum() == 0:
        return 0.0
    return float(entropy(counts))


def weight_density(w: Sequence[float], points: int = 101) -> Tuple[np.ndarray, np.ndarray]:
    """Gaussian kernel density of the weights on an evenly spaced grid over [0, 1]."""
    values = np.asarray(w, dtype=np.float64)
    grid = np.linspace(0.0, 1.0, points)
    if values.size < 2 or np.ptp(values) == 0:
        # the KDE covariance is singular; report a spike at the common value
        density = np.zeros(points)
        if values.size:
            density[int(np.argmin(np.abs(grid - values[0])))] = 1.0
        return grid, density
    return grid, gaussian_kde(values)(grid)


def mutual_information(series_x: Sequence[float], series_y: Sequence[float]) -> float:
    """
    Plug-in mutual information on a 10x10 equal-width histogram.

    Normalized by min(H(X), H(Y)) so the value lies in [0, 1]; 0 when either
    marginal has zero entropy.
    """
    x = np.asarray(series_x, dtype=np.float64)
    y = np.asarray(series_y, dtype=np.float64)
    if x.size != y.size:
        raise EvaluationError(f"series lengths differ: {x.size} vs {y.size}")
    if x.size < MIN_SERIES_LENGTH:
        raise EvaluationError(f"mutual information needs at least {MIN_SERIES_LENGTH} points, got {x.size}")
    joint, _, _ = np.histogram2d(x, y, bins=BINS)
    h_x = entropy(joint.sum(axis=1))
    h_y = entropy(joint.sum(axis=0))
    floor = min(h_x, h_y)
    if floor <= 0:
        return 0.0
    mi = mutual_info_score(None, None, contingency=joint)
    return float(np.clip(mi / floor, 0.0, 1.0))
