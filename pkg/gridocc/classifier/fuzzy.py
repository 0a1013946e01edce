"""
Sigmoid membership degrees and the fuzzy entropy of a set of memberships.
"""
from typing import Sequence, Union

import numpy as np
from scipy.special import expit

from ..core.errors import EvaluationError

ArrayLike = Union[float, Sequence[float], np.ndarray]


def sigmoid_membership(d: ArrayLike, a: ArrayLike, b: ArrayLike):
    """
    mu(d) = 1 / (1 + exp((d - b) / a)).

    Where a == 0 the sigmoid collapses to its a -> 0+ limit, a step that is 1
    for d <= b and 0 beyond.
    """
    d = np.asarray(d, dtype=np.float64)
    a = np.broadcast_to(np.asarray(a, dtype=np.float64), d.shape)
    b = np.broadcast_to(np.asarray(b, dtype=np.float64), d.shape)
    step = (d <= b).astype(np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        smooth = expit(-(d - b) / np.where(a > 0, a, 1.0))
    result = np.where(a > 0, smooth, step)
    return float(result) if result.ndim == 0 else result


def fuzzy_entropy(memberships: Sequence[float]) -> float:
    """
    Sigma-count ratio card(M and not M) / card(M or not M).

    0 for crisp sets, 1 when every membership is 0.5.
    """
    mu = np.asarray(memberships, dtype=np.float64).reshape(-1)
    if mu.size == 0:
        raise EvaluationError("fuzzy entropy of an empty membership list")
    complement = 1.0 - mu
    return float(np.minimum(mu, complement).sum() / np.maximum(mu, complement).sum())
