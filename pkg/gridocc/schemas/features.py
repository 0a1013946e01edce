"""
Pydantic schemas for feature descriptors and the product feature space.
"""
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..core.errors import SchemaError

# On-disk token for the "not applicable" value of special quantitative features.
# In memory the value is None.
EPSILON_TOKEN = "NA"


class FeatureKind(str, Enum):
    CATEGORICAL = "categorical"
    QUANTITATIVE = "quantitative"
    CIRCULAR = "circular"
    SPECIAL = "special_quantitative"
    TIMESERIES = "timeseries"


class Scaling(str, Enum):
    AFFINE = "affine"
    STANDARD = "standard"
    NONE = "none"


class FeatureDescriptor(BaseModel):
    """Schema for a single feature of the product space."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = Field(..., min_length=1, description="Unique feature name")
    kind: FeatureKind = Field(..., description="Feature kind, selects the dissimilarity kernel")
    period: Optional[int] = Field(None, ge=1, description="Circular period a; values live in {0..a}")
    domain: Optional[List[str]] = Field(None, description="Categorical labels")
    scaling: Scaling = Field(Scaling.AFFINE, description="Normalization of quantitative/special values")

    @model_validator(mode="after")
    def _check_kind_parameters(self):
        if self.kind == FeatureKind.CIRCULAR and self.period is None:
            raise ValueError(f"circular feature '{self.name}' needs a period")
        if self.kind == FeatureKind.CATEGORICAL and not self.domain:
            raise ValueError(f"categorical feature '{self.name}' needs a non-empty domain")
        if self.kind != FeatureKind.CIRCULAR and self.period is not None:
            raise ValueError(f"feature '{self.name}' is not circular but declares a period")
        if self.kind == FeatureKind.SPECIAL and self.scaling == Scaling.STANDARD:
            raise ValueError(f"special feature '{self.name}' must stay in [0, 1]; standard scaling not allowed")
        return self

    @property
    def is_numeric(self) -> bool:
        return self.kind in (FeatureKind.QUANTITATIVE, FeatureKind.SPECIAL)


class FeatureSchema(BaseModel):
    """Ordered list of descriptors defining F = F1 x ... x Fm."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    features: List[FeatureDescriptor] = Field(..., min_length=1)

    @field_validator("features")
    @classmethod
    def _unique_names(cls, features: List[FeatureDescriptor]) -> List[FeatureDescriptor]:
        seen = set()
        for descriptor in features:
            if descriptor.name in seen:
                raise ValueError(f"duplicate feature name '{descriptor.name}'")
            seen.add(descriptor.name)
        return features

    @property
    def arity(self) -> int:
        return len(self.features)

    @property
    def names(self) -> List[str]:
        return [f.name for f in self.features]

    def indices_of(self, kind: FeatureKind) -> List[int]:
        return [j for j, f in enumerate(self.features) if f.kind == kind]

    def index_of(self, name: str) -> int:
        for j, f in enumerate(self.features):
            if f.name == name:
                return j
        raise SchemaError(f"unknown feature '{name}'")

    def validate_pattern(self, values: Sequence[Any], row: Optional[int] = None) -> None:
        """
        Check arity and the variant of every value against its descriptor.

        Args:
            values: Pattern values aligned to the schema (in-memory form, ε as None)
            row: Optional row index included in the error message

        Raises:
            SchemaError: On the first mismatch found
        """
        where = f"row {row}: " if row is not None else ""
        if len(values) != self.arity:
            raise SchemaError(f"{where}expected {self.arity} values, got {len(values)}")
        for descriptor, value in zip(self.features, values):
            problem = _check_value(descriptor, value)
            if problem:
                raise SchemaError(f"{where}feature '{descriptor.name}': {problem}")

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "FeatureSchema":
        return cls.model_validate(payload)


def _check_value(descriptor: FeatureDescriptor, value: Any) -> Optional[str]:
    kind = descriptor.kind
    if kind == FeatureKind.CATEGORICAL:
        if not isinstance(value, str):
            return f"expected a label, got {value!r}"
        if value not in descriptor.domain:
            return f"label {value!r} not in domain {descriptor.domain}"
    elif kind == FeatureKind.QUANTITATIVE:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return f"expected a number, got {value!r}"
    elif kind == FeatureKind.SPECIAL:
        if value is not None and (isinstance(value, bool) or not isinstance(value, (int, float))):
            return f"expected a number or {EPSILON_TOKEN}, got {value!r}"
    elif kind == FeatureKind.CIRCULAR:
        if isinstance(value, bool) or not isinstance(value, int):
            return f"expected an integer, got {value!r}"
        if not 0 <= value <= descriptor.period:
            return f"value {value} outside [0, {descriptor.period}]"
    elif kind == FeatureKind.TIMESERIES:
        if not isinstance(value, (list, tuple)):
            return f"expected an event sequence, got {value!r}"
        for event in value:
            if isinstance(event, bool) or not isinstance(event, (int, float)) or event < 0:
                return f"event times must be non-negative numbers, got {event!r}"
    return None
