"""
Pydantic schemas for report rows and the reproducibility header.
"""
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..core.config import settings


class RunHeader(BaseModel):
    """Written as '#'-prefixed lines on top of every report and into model files."""
    model_config = ConfigDict(extra="forbid")

    config_hash: str
    seed: int
    model_format: str = Field(default_factory=lambda: settings.MODEL_FORMAT)
    dataset_format: str = Field(default_factory=lambda: settings.DATASET_FORMAT)
    stats_format: str = Field(default_factory=lambda: settings.STATS_FORMAT)
    report_format: str = Field(default_factory=lambda: settings.REPORT_FORMAT)

    def as_dict(self) -> Dict[str, str]:
        return {key: str(value) for key, value in self.model_dump().items()}


class KSelectionRow(BaseModel):
    """Outcome of training one partition order."""
    k: int
    fitness: float
    validation_accuracy: float
    validation_fe: float
    generations: int
    selected: bool = False
    test_auc: Optional[float] = None


class EvaluationRow(BaseModel):
    """Test-set metrics of one ensemble."""
    n: int
    tp: int
    fp: int
    tn: int
    fn: int
    fpr: float
    recall: float
    precision: float
    accuracy: float
    auc: Optional[float] = None
    fe: float
    flags: str = ""


class ExperimentRow(BaseModel):
    """Aggregated metrics of one experiment setting over its repeats."""
    experiment: str
    setting: str
    k: int
    repeats: int
    fpr_mean: float
    fpr_std: float
    recall_mean: float
    recall_std: float
    precision_mean: float
    precision_std: float
    accuracy_mean: float
    accuracy_std: float
    auc_mean: float
    auc_std: float
    fe_mean: float
    fe_std: float
    mi_mean: Optional[float] = None
    mi_std: Optional[float] = None
    reference_auc: Optional[str] = None


class ClassificationRow(BaseModel):
    row: int
    label: int
    membership: float
    cluster: int
    dissimilarity: float


class EmbeddingRow(BaseModel):
    x: float
    y: float
    label: int


class DensityRow(BaseModel):
    weight: float
    density: float


class TraceRow(BaseModel):
    """Best fitness and weight entropy of one GA generation."""
    k: int
    generation: int
    fitness: float
    weight_entropy: float


class RocRow(BaseModel):
    fpr: float
    tpr: float


def column_names(row_type) -> List[str]:
    return list(row_type.model_fields.keys())
