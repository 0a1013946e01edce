from .pipeline_service import OccPipelineService
from .experiment_service import ExperimentService

__all__ = ["OccPipelineService", "ExperimentService"]
