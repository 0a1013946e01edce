import json

import numpy as np
import pytest

from gridocc.classifier import Ensemble, OccModel
from gridocc.core.errors import DataFormatError, ModelFormatError, SchemaError
from gridocc.dissimilarity.dtw import fit_ts_normalizer
from gridocc.preprocessing.normalization import fit_stats
from gridocc.schemas.reports import EvaluationRow, RunHeader
from gridocc.storage import (
    load_dataset,
    load_ensemble,
    load_labeled_dataset,
    load_schema,
    load_stats,
    read_dataset_header,
    read_report,
    save_dataset,
    save_ensemble,
    save_schema,
    save_stats,
    write_report,
)


@pytest.fixture
def schema_file(tmp_path, mixed_schema):
    path = tmp_path / "schema.json"
    save_schema(path, mixed_schema)
    return path


def test_dataset_round_trip_keeps_not_applicable(tmp_path, schema_file, mixed_schema, mixed_patterns):
    data = tmp_path / "data.jsonl"
    save_dataset(data, mixed_schema, mixed_patterns)
    assert '"NA"' in data.read_text(encoding="utf-8")
    schema, patterns, _ = load_dataset(data, schema_file)
    assert schema == mixed_schema
    assert patterns == mixed_patterns


def test_labelled_dataset(tmp_path, schema_file, mixed_schema, mixed_patterns):
    data = tmp_path / "labelled.jsonl"
    save_dataset(data, mixed_schema, mixed_patterns, labels=[1, 0, 1, 0])
    _, labeled, _ = load_labeled_dataset(data, schema_file)
    assert labeled.labels.tolist() == [1, 0, 1, 0]


def test_malformed_row_reports_index(tmp_path, schema_file):
    data = tmp_path / "bad.jsonl"
    data.write_text('["L1", 0.1, 1, "NA", []]\n["L9", 0.1, 1, "NA", []]\n', encoding="utf-8")
    with pytest.raises(DataFormatError) as info:
        load_dataset(data, schema_file)
    assert info.value.row == 1


def test_wrong_arity_row(tmp_path, schema_file):
    data = tmp_path / "short.jsonl"
    data.write_text('["L1", 0.1]\n', encoding="utf-8")
    with pytest.raises(DataFormatError, match="expected 5 values"):
        load_dataset(data, schema_file)


def test_unknown_feature_kind(tmp_path):
    path = tmp_path / "schema.json"
    path.write_text(json.dumps({"features": [{"name": "x", "kind": "complex"}]}), encoding="utf-8")
    with pytest.raises(SchemaError):
        load_schema(path)


def test_stats_fitted_on_load_are_reusable(tmp_path, schema_file, mixed_schema, mixed_patterns):
    data = tmp_path / "data.jsonl"
    save_dataset(data, mixed_schema, mixed_patterns)
    _, first, stats = load_dataset(data, schema_file)
    _, second, _ = load_dataset(data, schema_file, stats)
    assert first == second


@pytest.fixture
def ensemble(mixed_schema, mixed_patterns):
    norm = fit_ts_normalizer(mixed_schema, mixed_patterns)
    stats = fit_stats(mixed_schema, [list(p.values) for p in mixed_patterns])
    weights = np.array([0.5, 1.0, 0.25, 0.75, 0.1])
    replicates = [
        OccModel(mixed_schema, weights, [mixed_patterns[0], mixed_patterns[2]], [0.1, 0.2], [0.05, 0.3], norm, stats),
        OccModel(mixed_schema, weights, [mixed_patterns[1], mixed_patterns[3]], [0.15, 0.0], [0.1, 0.1], norm, stats),
    ]
    return Ensemble(replicates=replicates, selected=1, validation_entropy=[0.4, 0.1], seeds=[11, 12])


def test_model_round_trip(tmp_path, ensemble, mixed_patterns):
    path = tmp_path / "model.json"
    save_ensemble(path, ensemble, RunHeader(config_hash="abc", seed=1))
    loaded = load_ensemble(path)
    assert loaded.k == 2
    assert loaded.selected == 1
    assert loaded.seeds == [11, 12]
    assert np.allclose(loaded.weights, ensemble.weights)
    original = ensemble.decide(mixed_patterns)
    restored = loaded.decide(mixed_patterns)
    assert [d.hard for d in restored] == [d.hard for d in original]
    assert [d.membership for d in restored] == [d.membership for d in original]
    assert [d.cluster for d in restored] == [d.cluster for d in original]


def test_model_files_are_byte_identical(tmp_path, ensemble):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    header = RunHeader(config_hash="abc", seed=1)
    save_ensemble(first, ensemble, header)
    save_ensemble(second, load_ensemble(first), header)
    assert first.read_bytes() == second.read_bytes()


def test_model_wrong_format_tag(tmp_path, ensemble):
    path = tmp_path / "model.json"
    save_ensemble(path, ensemble)
    payload = json.loads(path.read_text(encoding="utf-8"))
    payload["format"] = "other/9"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(ModelFormatError, match="unsupported model format"):
        load_ensemble(path)


def test_model_missing_file(tmp_path):
    with pytest.raises(ModelFormatError) as info:
        load_ensemble(tmp_path / "missing.json")
    assert info.value.exit_code == 2


def test_report_header_and_rows(tmp_path):
    path = tmp_path / "report.csv"
    row = EvaluationRow(n=4, tp=2, fp=1, tn=1, fn=0, fpr=0.5, recall=1.0, precision=2 / 3, accuracy=0.75, auc=None, fe=0.1)
    write_report(path, [row], RunHeader(config_hash="abc", seed=7))
    header, rows = read_report(path)
    assert header["config_hash"] == "abc"
    assert header["seed"] == "7"
    assert float(rows[0]["precision"]) == 2 / 3
    assert rows[0]["auc"] == ""


def test_run_header_reaches_schema_stats_and_datasets(tmp_path, mixed_schema, mixed_patterns):
    header = RunHeader(config_hash="f00d", seed=9)
    schema_path, stats_path, data_path = tmp_path / "schema.json", tmp_path / "stats.json", tmp_path / "data.jsonl"
    save_schema(schema_path, mixed_schema, header)
    save_dataset(data_path, mixed_schema, mixed_patterns, labels=[1, 0, 1, 0], header=header)
    _, labeled, stats = load_labeled_dataset(data_path, schema_path)
    save_stats(stats_path, stats, header)

    assert json.loads(schema_path.read_text(encoding="utf-8"))["header"]["config_hash"] == "f00d"
    assert load_schema(schema_path) == mixed_schema
    assert read_dataset_header(data_path) == header.as_dict()
    assert labeled.patterns == mixed_patterns
    assert labeled.labels.tolist() == [1, 0, 1, 0]
    reloaded = load_stats(stats_path)
    assert reloaded.header["seed"] == "9"
    assert reloaded.affine == stats.affine


def test_dataset_without_header(tmp_path, mixed_schema, mixed_patterns):
    data = tmp_path / "plain.jsonl"
    save_dataset(data, mixed_schema, mixed_patterns)
    assert read_dataset_header(data) == {}


def test_malformed_row_index_ignores_header_line(tmp_path, schema_file):
    data = tmp_path / "bad.jsonl"
    data.write_text('{"header": {"seed": "1"}}\n["L9", 0.1, 1, "NA", []]\n', encoding="utf-8")
    with pytest.raises(DataFormatError) as info:
        load_dataset(data, schema_file)
    assert info.value.row == 0
