"""
Per-feature kernels and the weighted composite dissimilarity over heterogeneous patterns.
"""
from .kernels import simple_matching, circular_diff, special_diff
from .dtw import dtw, TsNormalizer, fit_ts_normalizer
from .space import (
    Pattern,
    FeatureSpace,
    as_weight_vector,
    composite_dissimilarity,
    dissimilarity_matrix,
)

__all__ = [
    "simple_matching",
    "circular_diff",
    "special_diff",
    "dtw",
    "TsNormalizer",
    "fit_ts_normalizer",
    "Pattern",
    "FeatureSpace",
    "as_weight_vector",
    "composite_dissimilarity",
    "dissimilarity_matrix",
]
