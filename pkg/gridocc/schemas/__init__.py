"""
Pydantic schemas for on-disk artifacts and run configuration.
"""
from .features import FeatureKind, FeatureDescriptor, FeatureSchema, Scaling, EPSILON_TOKEN
from .stats import AffineStats, StandardStats, BoundingBox, NormalizationStats
from .model import ClusterRecord, ReplicateRecord, EnsembleFile
from .reports import RunHeader, KSelectionRow, EvaluationRow, ExperimentRow

__all__ = [
    "FeatureKind",
    "FeatureDescriptor",
    "FeatureSchema",
    "Scaling",
    "EPSILON_TOKEN",
    "AffineStats",
    "StandardStats",
    "BoundingBox",
    "NormalizationStats",
    "ClusterRecord",
    "ReplicateRecord",
    "EnsembleFile",
    "RunHeader",
    "KSelectionRow",
    "EvaluationRow",
    "ExperimentRow",
]
