"""
Dataset ingestion, normalization, feature engineering and synthetic data.
"""
from .normalization import affine_normalize, standardize, fit_stats, apply_stats, normalized_schema
from .current import backbone_current_feature
from .datasets import LabeledSet, SplitSets, split_problem
from .synthetic import SyntheticSpec, generate_gaussian_clusters, generate_uniform_nontargets
from .faults import FaultRecord, fault_schema, generate_fault_records, engineer_fault_features, make_fault_problem

__all__ = [
    "affine_normalize",
    "standardize",
    "fit_stats",
    "apply_stats",
    "normalized_schema",
    "backbone_current_feature",
    "LabeledSet",
    "SplitSets",
    "split_problem",
    "SyntheticSpec",
    "generate_gaussian_clusters",
    "generate_uniform_nontargets",
    "FaultRecord",
    "fault_schema",
    "generate_fault_records",
    "engineer_fault_features",
    "make_fault_problem",
]
