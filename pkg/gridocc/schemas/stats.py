"""
Pydantic schemas for persisted normalization statistics.
"""
from typing import Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import settings


class AffineStats(BaseModel):
    """Observed (m, M) of one feature."""
    model_config = ConfigDict(extra="forbid")

    min: float
    max: float

    @model_validator(mode="after")
    def _ordered(self):
        if self.max < self.min:
            raise ValueError(f"max {self.max} below min {self.min}")
        return self


class StandardStats(BaseModel):
    """Observed (mean, stddev) of one feature."""
    model_config = ConfigDict(extra="forbid")

    mean: float
    std: float = Field(..., ge=0)


class BoundingBox(BaseModel):
    """Largest rectangle including all stations, decimal degrees."""
    model_config = ConfigDict(extra="forbid")

    min_lat: float = Field(..., ge=-90, le=90)
    max_lat: float = Field(..., ge=-90, le=90)
    min_lon: float = Field(..., ge=-180, le=180)
    max_lon: float = Field(..., ge=-180, le=180)


class SequenceProfile(BaseModel):
    """Length and value range of the event sequences of one feature."""
    model_config = ConfigDict(extra="forbid")

    min_length: int = Field(0, ge=0)
    max_length: int = Field(0, ge=0)
    min_value: float = 0.0
    max_value: float = 0.0


class NormalizationStats(BaseModel):
    """
    Everything fitted on a training load and re-applied at inference.

    The target-set profile (missing rates, observed ranges, sequence profiles)
    drives the uniform non-target generator.
    """
    model_config = ConfigDict(extra="forbid")

    format: str = Field(default_factory=lambda: settings.STATS_FORMAT)
    header: Dict[str, str] = Field(default_factory=dict, description="Reproducibility header")
    affine: Dict[str, AffineStats] = Field(default_factory=dict)
    standard: Dict[str, StandardStats] = Field(default_factory=dict)
    bounding_box: Optional[BoundingBox] = None
    missing_rate: Dict[str, float] = Field(default_factory=dict)
    value_range: Dict[str, AffineStats] = Field(default_factory=dict)
    sequences: Dict[str, SequenceProfile] = Field(default_factory=dict)
