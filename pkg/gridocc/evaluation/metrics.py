"""
Confusion-matrix metrics, ROC/AUC and correlation.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
from scipy.stats import pearsonr
from sklearn.metrics import confusion_matrix, roc_auc_score, roc_curve

from ..core.errors import EvaluationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConfusionCounts:
    """Target class is the positive class."""

    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    @classmethod
    def from_labels(cls, y_true: Sequence[int], y_pred: Sequence[int]) -> "ConfusionCounts":
        tn, fp, fn, tp = confusion_matrix(np.asarray(y_true), np.asarray(y_pred), labels=[0, 1]).ravel()
        return cls(tp=int(tp), fp=int(fp), tn=int(tn), fn=int(fn))


@dataclass(frozen=True)
class ConfusionMetrics:
    fpr: float
    recall: float
    precision: float
    accuracy: float
    flags: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class RocCurve:
    fpr: np.ndarray
    tpr: np.ndarray
    auc: float


def _ratio(num: int, den: int, name: str, flags: List[str]) -> float:
    if den == 0:
        flags.append(f"{name}:0/0")
        return 0.0
    return num / den


def confusion_metrics(counts: ConfusionCounts) -> ConfusionMetrics:
    """FPR, recall, precision and accuracy; any 0/0 ratio is 0 and flagged."""
    if counts.total == 0:
        raise EvaluationError("confusion counts are all zero")
    flags: List[str] = []
    fpr = _ratio(counts.fp, counts.fp + counts.tn, "fpr", flags)
    recall = _ratio(counts.tp, counts.tp + counts.fn, "recall", flags)
    precision = _ratio(counts.tp, counts.tp + counts.fp, "precision", flags)
    accuracy = (counts.tp + counts.tn) / counts.total
    if flags:
        logger.warning(f"Degenerate confusion metrics: {', '.join(flags)}")
    return ConfusionMetrics(fpr=fpr, recall=recall, precision=precision, accuracy=accuracy, flags=flags)


def roc_auc(scores: Sequence[float], labels: Sequence[int]) -> RocCurve:
    """
    ROC curve of membership scores against true labels (1 = target).

    Ties are handled by midranks, so identical scores give AUC 0.5.
    """
    scores = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if scores.shape != labels.shape:
        raise EvaluationError(f"{scores.size} scores but {labels.size} labels")
    if np.unique(labels).size < 2:
        raise EvaluationError("ROC needs at least one target and one non-target")
    fpr, tpr, _ = roc_curve(labels, scores, drop_intermediate=False)
    return RocCurve(fpr=fpr, tpr=tpr, auc=float(roc_auc_score(labels, scores)))


def pearson_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.size != ys.size:
        raise EvaluationError(f"series lengths differ: {xs.size} vs {ys.size}")
    if xs.size < 2:
        raise EvaluationError("correlation needs at least two points")
    if np.ptp(xs) == 0 or np.ptp(ys) == 0:
        raise EvaluationError("correlation of a constant series is undefined")
    return float(pearsonr(xs, ys)[0])
