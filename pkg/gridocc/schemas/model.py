"""
Pydantic schemas for the persisted ensemble model.
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..core.config import settings
from .features import FeatureSchema
from .stats import NormalizationStats


class ClusterRecord(BaseModel):
    """One cluster: representative in on-disk form plus its decision region."""
    model_config = ConfigDict(extra="forbid")

    representative: List[Any]
    extent: float = Field(..., ge=0)
    sigma: float = Field(..., ge=0)


class ReplicateRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    seed: int
    clusters: List[ClusterRecord] = Field(..., min_length=1)


class EnsembleFile(BaseModel):
    """Everything needed to classify new raw records, tagged with a format version."""
    model_config = ConfigDict(extra="forbid")

    format: str = Field(default_factory=lambda: settings.MODEL_FORMAT)
    header: Dict[str, str] = Field(default_factory=dict, description="Reproducibility header")
    feature_schema: FeatureSchema
    stats: Optional[NormalizationStats] = None
    ts_maxima: Dict[str, float] = Field(default_factory=dict)
    weights: List[float]
    extent_strategy: str = "mean"
    selected: int = Field(0, ge=0)
    validation_entropy: List[float] = Field(default_factory=list)
    replicates: List[ReplicateRecord] = Field(..., min_length=1)
