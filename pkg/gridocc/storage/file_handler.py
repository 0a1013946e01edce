"""
File storage: datasets (JSON Lines), schema, stats and model files (JSON), reports (CSV).
"""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from ..classifier.ensemble import Ensemble
from ..classifier.model import OccModel
from ..clustering.kmedoids import ExtentStrategy
from ..core.config import settings
from ..core.errors import DataFormatError, ModelFormatError, SchemaError, StatsError
from ..dissimilarity.dtw import TsNormalizer
from ..dissimilarity.space import Pattern
from ..preprocessing.datasets import TARGET, LabeledSet
from ..preprocessing.normalization import apply_stats, fit_stats
from ..schemas.features import EPSILON_TOKEN, FeatureKind, FeatureSchema
from ..schemas.model import ClusterRecord, EnsembleFile, ReplicateRecord
from ..schemas.reports import RunHeader, column_names
from ..schemas.stats import NormalizationStats

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# Key of the reproducibility header in schema files and the leading JSON Lines record
HEADER_KEY = "header"


def _ensure_parent(path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _write_text(path: PathLike, text: str) -> None:
    # newline="\n" keeps artifacts byte-identical across platforms
    with open(_ensure_parent(path), "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def encode_values(schema: FeatureSchema, values: Sequence[Any]) -> List[Any]:
    """In-memory values to JSON-ready values (None becomes the NA token)."""
    out = []
    for descriptor, value in zip(schema.features, values):
        if descriptor.kind == FeatureKind.SPECIAL and value is None:
            out.append(EPSILON_TOKEN)
        elif descriptor.kind == FeatureKind.TIMESERIES:
            out.append([float(e) for e in value])
        else:
            out.append(value)
    return out


def decode_values(schema: FeatureSchema, raw: Sequence[Any], row: Optional[int] = None) -> List[Any]:
    """JSON values to in-memory values, checked against the schema."""
    if not isinstance(raw, list):
        raise DataFormatError(f"expected a JSON array of values, got {type(raw).__name__}", row=row)
    if len(raw) != schema.arity:
        raise DataFormatError(f"expected {schema.arity} values, got {len(raw)}", row=row)
    values = []
    for descriptor, value in zip(schema.features, raw):
        if descriptor.kind == FeatureKind.SPECIAL and value == EPSILON_TOKEN:
            values.append(None)
        elif descriptor.kind == FeatureKind.CIRCULAR and isinstance(value, float) and value.is_integer():
            values.append(int(value))
        else:
            values.append(value)
    try:
        schema.validate_pattern(values)
    except SchemaError as e:
        raise DataFormatError(str(e), row=row) from e
    return values


# Schema descriptor

def load_schema(path: PathLike) -> FeatureSchema:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as e:
            raise SchemaError(f"{path}: not valid JSON ({e})") from e
    if isinstance(payload, dict):
        payload.pop(HEADER_KEY, None)
    try:
        return FeatureSchema.from_dict(payload)
    except ValidationError as e:
        raise SchemaError(f"{path}: {e.errors()[0]['msg']} at {'.'.join(str(p) for p in e.errors()[0]['loc'])}") from e


def save_schema(path: PathLike, schema: FeatureSchema, header: Optional[RunHeader] = None) -> None:
    payload = schema.model_dump(mode="json", exclude_none=True)
    if header is not None:
        payload = {HEADER_KEY: header.as_dict(), **payload}
    _write_text(path, json.dumps(payload, indent=2) + "\n")


# Normalization statistics

def load_stats(path: PathLike) -> NormalizationStats:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        stats = NormalizationStats.model_validate_json(text)
    except ValidationError as e:
        raise StatsError(f"{path}: invalid statistics file ({e.error_count()} problems)") from e
    if stats.format != settings.STATS_FORMAT:
        raise StatsError(f"{path}: unsupported stats format '{stats.format}'")
    return stats


def save_stats(path: PathLike, stats: NormalizationStats, header: Optional[RunHeader] = None) -> None:
    if header is not None:
        stats = stats.model_copy(update={"header": header.as_dict()})
    _write_text(path, stats.model_dump_json(indent=2) + "\n")


# Datasets

def _is_header_record(record: Any) -> bool:
    return isinstance(record, dict) and set(record) == {HEADER_KEY} and isinstance(record[HEADER_KEY], dict)


def read_dataset_header(data_path: PathLike) -> dict:
    """Reproducibility header of a JSON Lines dataset, empty when it has none."""
    with open(data_path, "r", encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError:
                return {}
            return dict(record[HEADER_KEY]) if _is_header_record(record) else {}
    return {}


def read_rows(data_path: PathLike, schema: FeatureSchema) -> Tuple[List[List[Any]], np.ndarray]:
    """
    Parse a JSON Lines dataset into raw rows and labels.

    Each line is either a JSON array aligned to the schema or an object
    {"label": 0|1, "values": [...]}. Unlabelled rows count as targets.
    Blank lines and a leading {"header": {...}} record are skipped; row
    indices count data lines from 0.
    """
    rows, labels = [], []
    first = True
    with open(data_path, "r", encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            row = len(rows)
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise DataFormatError(f"not valid JSON ({e.msg})", row=row) from e
            if first and _is_header_record(record):
                first = False
                continue
            first = False
            label = TARGET
            if isinstance(record, dict):
                if "values" not in record:
                    raise DataFormatError("labelled record without 'values'", row=row)
                label = record.get("label", TARGET)
                if label not in (0, 1):
                    raise DataFormatError(f"label must be 0 or 1, got {label!r}", row=row)
                record = record["values"]
            rows.append(decode_values(schema, record, row=row))
            labels.append(int(label))
    logger.info(f"Read {len(rows)} rows from {data_path}")
    return rows, np.asarray(labels, dtype=np.int64)


def load_labeled_dataset(
    data_path: PathLike,
    schema_path: PathLike,
    stats: Optional[NormalizationStats] = None,
) -> Tuple[FeatureSchema, LabeledSet, NormalizationStats]:
    """Like load_dataset, keeping the per-row labels."""
    schema = load_schema(schema_path)
    rows, labels = read_rows(data_path, schema)
    if stats is None:
        stats = fit_stats(schema, rows)
    patterns = apply_stats(schema, rows, stats)
    return schema, LabeledSet(patterns, labels), stats


def load_dataset(
    data_path: PathLike,
    schema_path: PathLike,
    stats: Optional[NormalizationStats] = None,
) -> Tuple[FeatureSchema, List[Pattern], NormalizationStats]:
    """
    Load and normalize a dataset.

    Args:
        data_path: JSON Lines file, one record per line, NA for "not applicable"
        schema_path: JSON schema descriptor
        stats: Statistics of an earlier load (inference); fitted on this load when None

    Returns:
        (schema, normalized patterns, statistics)

    Raises:
        DataFormatError: Malformed row, with its index
        SchemaError: Unreadable descriptor or unknown feature kind
    """
    schema, labeled, stats = load_labeled_dataset(data_path, schema_path, stats)
    return schema, labeled.patterns, stats


def save_dataset(
    path: PathLike,
    schema: FeatureSchema,
    patterns: Iterable[Pattern],
    labels: Optional[Sequence[int]] = None,
    header: Optional[RunHeader] = None,
) -> None:
    """Write patterns as JSON Lines; labelled objects when labels are given."""
    lines = []
    patterns = list(patterns)
    for i, pattern in enumerate(patterns):
        values = encode_values(schema, pattern.values)
        if labels is None:
            lines.append(json.dumps(values))
        else:
            lines.append(json.dumps({"label": int(labels[i]), "values": values}))
    n = len(lines)
    if header is not None:
        lines.insert(0, json.dumps({HEADER_KEY: header.as_dict()}))
    _write_text(path, "".join(line + "\n" for line in lines))
    logger.info(f"Wrote {n} patterns to {path}")


def save_labeled_set(path: PathLike, schema: FeatureSchema, data: LabeledSet, header: Optional[RunHeader] = None) -> None:
    save_dataset(path, schema, data.patterns, data.labels, header=header)


# Models

def ensemble_to_file(ensemble: Ensemble, header: Optional[RunHeader] = None) -> EnsembleFile:
    schema = ensemble.schema
    chosen = ensemble.chosen
    replicates = []
    for seed, replicate in zip(ensemble.seeds or [0] * len(ensemble.replicates), ensemble.replicates):
        clusters = [
            ClusterRecord(
                representative=encode_values(schema, rep.values),
                extent=float(extent),
                sigma=float(sigma),
            )
            for rep, extent, sigma in zip(replicate.representatives, replicate.extents, replicate.sigmas)
        ]
        replicates.append(ReplicateRecord(seed=int(seed), clusters=clusters))
    return EnsembleFile(
        header=header.as_dict() if header else {},
        feature_schema=schema,
        stats=chosen.stats,
        ts_maxima=dict(chosen.normalizer.maxima),
        weights=[float(w) for w in ensemble.weights],
        extent_strategy=ExtentStrategy(chosen.extent_strategy).value,
        selected=ensemble.selected,
        validation_entropy=[float(v) for v in ensemble.validation_entropy],
        replicates=replicates,
    )


def ensemble_from_file(payload: EnsembleFile) -> Ensemble:
    schema = payload.feature_schema
    normalizer = TsNormalizer(maxima=dict(payload.ts_maxima))
    replicates = []
    for r, record in enumerate(payload.replicates):
        reps = []
        for c, cluster in enumerate(record.clusters):
            try:
                reps.append(Pattern.of(decode_values(schema, cluster.representative)))
            except DataFormatError as e:
                raise ModelFormatError(f"replicate {r} cluster {c}: {e}") from e
        replicates.append(OccModel(
            schema=schema,
            weights=np.asarray(payload.weights, dtype=np.float64),
            representatives=reps,
            extents=[cl.extent for cl in record.clusters],
            sigmas=[cl.sigma for cl in record.clusters],
            normalizer=normalizer,
            stats=payload.stats,
            extent_strategy=ExtentStrategy(payload.extent_strategy),
        ))
    if payload.selected >= len(replicates):
        raise ModelFormatError(f"selected replicate {payload.selected} out of range")
    return Ensemble(
        replicates=replicates,
        selected=payload.selected,
        validation_entropy=list(payload.validation_entropy),
        seeds=[rec.seed for rec in payload.replicates],
    )


def save_ensemble(path: PathLike, ensemble: Ensemble, header: Optional[RunHeader] = None) -> None:
    _write_text(path, ensemble_to_file(ensemble, header).model_dump_json(indent=2) + "\n")
    logger.info(f"Saved k={ensemble.k} ensemble to {path}")


def load_ensemble(path: PathLike) -> Ensemble:
    """
    Read a model file.

    Raises:
        ModelFormatError: Unparseable file, wrong format tag or inconsistent content
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise ModelFormatError(f"cannot read model file {path}: {e}") from e
    try:
        tag = json.loads(text).get("format")
    except (json.JSONDecodeError, AttributeError) as e:
        raise ModelFormatError(f"{path}: not a JSON model file") from e
    if tag != settings.MODEL_FORMAT:
        raise ModelFormatError(f"{path}: unsupported model format '{tag}' (expected '{settings.MODEL_FORMAT}')")
    try:
        payload = EnsembleFile.model_validate_json(text)
        return ensemble_from_file(payload)
    except (ValidationError, SchemaError) as e:
        raise ModelFormatError(f"{path}: {e}") from e


# Reports

def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_report(path: PathLike, rows: Sequence[BaseModel], header: Optional[RunHeader] = None, row_type=None) -> None:
    """CSV report preceded by '#'-prefixed reproducibility lines."""
    row_type = row_type or (type(rows[0]) if rows else None)
    if row_type is None:
        raise ValueError("write_report needs rows or an explicit row_type")
    columns = column_names(row_type)
    with open(_ensure_parent(path), "w", encoding="utf-8", newline="") as handle:
        if header is not None:
            for key, value in header.as_dict().items():
                handle.write(f"# {key}: {value}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            data = row.model_dump()
            writer.writerow([_cell(data[c]) for c in columns])
    logger.info(f"Wrote {len(rows)} report rows to {path}")


def read_report(path: PathLike) -> Tuple[dict, List[dict]]:
    """Parse a report back into (header, rows as string dicts)."""
    header, body = {}, []
    with open(path, "r", encoding="utf-8") as handle:
        for line in handle:
            if line.startswith("# "):
                key, _, value = line[2:].rstrip("\n").partition(": ")
                header[key] = value
            else:
                body.append(line)
    return header, list(csv.DictReader(body))
