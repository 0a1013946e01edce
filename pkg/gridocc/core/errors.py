"""
Exception hierarchy shared by the library and the command line.
"""
from typing import Optional

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2


class OccError(Exception):
    """Base class for every error raised by gridocc."""

    exit_code = EXIT_VALIDATION


class SchemaError(OccError):
    """Pattern, weight vector or descriptor does not match the feature schema."""


class DomainError(OccError):
    """A kernel received a value outside its domain."""


class StatsError(OccError):
    """Normalization statistics are inconsistent (e.g. max below min)."""


class ConfigError(OccError):
    """Run configuration failed validation."""


class ClusteringError(OccError):
    """Invalid partition request (empty cluster, k out of range)."""


class EvaluationError(OccError):
    """Metric undefined for the supplied input."""


class TrainingError(OccError):
    """Infeasible training request."""


class ModelFormatError(OccError):
    """Model file is unreadable or has the wrong format tag."""

    exit_code = EXIT_IO


class DataFormatError(OccError):
    """Malformed dataset row; carries the 0-based row index when known."""

    exit_code = EXIT_IO

    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
