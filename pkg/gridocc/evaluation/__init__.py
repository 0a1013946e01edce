"""
Metrics, information measures, embeddings and benchmark data.

Experiment runners live in .experiments and are imported from there directly.
"""
from .metrics import ConfusionCounts, ConfusionMetrics, RocCurve, confusion_metrics, roc_auc, pearson_correlation
from .information import weight_entropy, weight_density, mutual_information
from .embedding import embed_dissimilarity
from .benchmarks import BENCHMARKS, REFERENCE_AUC, load_benchmark, reference_auc, best_reference

__all__ = [
    "ConfusionCounts",
    "ConfusionMetrics",
    "RocCurve",
    "confusion_metrics",
    "roc_auc",
    "pearson_correlation",
    "weight_entropy",
    "weight_density",
    "mutual_information",
    "embed_dissimilarity",
    "BENCHMARKS",
    "REFERENCE_AUC",
    "load_benchmark",
    "reference_auc",
    "best_reference",
]
