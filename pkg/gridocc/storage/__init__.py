"""
Artifact persistence.
"""
from .file_handler import (
    load_schema,
    save_schema,
    load_stats,
    save_stats,
    load_dataset,
    load_labeled_dataset,
    save_dataset,
    save_labeled_set,
    read_dataset_header,
    load_ensemble,
    save_ensemble,
    write_report,
    read_report,
)

__all__ = [
    "load_schema",
    "save_schema",
    "load_stats",
    "save_stats",
    "load_dataset",
    "load_labeled_dataset",
    "save_dataset",
    "save_labeled_set",
    "read_dataset_header",
    "load_ensemble",
    "save_ensemble",
    "write_report",
    "read_report",
]
