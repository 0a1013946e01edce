import json

import pytest

from gridocc.cli import build_parser, main, overrides_from_args
from gridocc.schemas.run_config import parse_config
from gridocc.services import ExperimentService
from gridocc.storage import load_stats, read_dataset_header, read_report

SMALL_GA = ["--population", "6", "--elites", "1", "--generations", "4", "--n-jobs", "1"]


def _last_json(capsys):
    lines = [line for line in capsys.readouterr().out.splitlines() if line.strip()]
    return json.loads(lines[-1])


@pytest.fixture
def synth_dir(tmp_path, capsys):
    out = tmp_path / "data"
    code = main([
        "synth", "--output", str(out), "--seed", "3",
        "--n-train", "24", "--n-validation", "24", "--n-test", "24", "--n-nontarget", "24",
    ])
    assert code == 0
    summary = _last_json(capsys)
    assert summary["status"] == "ok" and summary["n_train"] == 24
    return out


def _train_args(data, out):
    return [
        "train", "--output", str(out), "--seed", "5",
        "--schema", str(data / "schema.json"),
        "--train", str(data / "train.jsonl"),
        "--validation", str(data / "validation.jsonl"),
        "--test", str(data / "test.jsonl"),
        "--k-min", "1", "--k-max", "3",
        *SMALL_GA,
    ]


def test_flags_become_dotted_overrides():
    args = build_parser().parse_args(["experiment", "implicit-fpr", "--ratios", "0.1,0.2", "--alpha", "0.5"])
    overrides = overrides_from_args(args)
    assert overrides["mode"] == "experiment"
    assert overrides["experiment.name"] == "implicit-fpr"
    assert overrides["experiment.ratios"] == [0.1, 0.2]
    assert overrides["ga.alpha"] == 0.5
    assert "seed" not in overrides


def test_synth_train_evaluate_classify(synth_dir, tmp_path, capsys):
    run = tmp_path / "run"
    assert main(_train_args(synth_dir, run)) == 0
    trained = _last_json(capsys)
    assert trained["mode"] == "train" and 1 <= trained["k"] <= 3
    for name in ("model.json", "stats.json", "k_selection.csv", "ga_trace.csv", "weight_density.csv", "embedding.csv"):
        assert (run / name).exists()
    selection = (run / "k_selection.csv").read_text(encoding="utf-8")
    assert selection.startswith("# config_hash: ")

    assert main(["evaluate", "--output", str(run), "--model", str(run / "model.json"),
                 "--test", str(synth_dir / "test.jsonl")]) == 0
    evaluated = _last_json(capsys)
    assert evaluated["n"] == 48
    assert 0.0 <= evaluated["accuracy"] <= 1.0
    assert (run / "roc.csv").exists()

    model_bytes = (run / "model.json").read_bytes()
    assert main(["classify", "--output", str(run), "--model", str(run / "model.json"),
                 "--input", str(synth_dir / "test.jsonl")]) == 0
    classified = _last_json(capsys)
    assert classified["n"] == 48
    assert classified["targets"] + classified["nontargets"] == 48
    assert (run / "model.json").read_bytes() == model_bytes


def test_training_is_reproducible(synth_dir, tmp_path, capsys):
    run = tmp_path / "run"
    assert main(_train_args(synth_dir, run)) == 0
    model = (run / "model.json").read_bytes()
    selection = (run / "k_selection.csv").read_bytes()
    assert main(_train_args(synth_dir, run)) == 0
    assert (run / "model.json").read_bytes() == model
    assert (run / "k_selection.csv").read_bytes() == selection
    capsys.readouterr()


def test_missing_model_exits_with_io_code(tmp_path, capsys):
    code = main(["classify", "--output", str(tmp_path), "--model", str(tmp_path / "nope.json"),
                 "--input", str(tmp_path / "x.jsonl")])
    assert code == 2
    summary = _last_json(capsys)
    assert summary["status"] == "error" and summary["exit_code"] == 2


def test_invalid_config_exits_with_validation_code(tmp_path, capsys):
    code = main(["synth", "--output", str(tmp_path), "--alpha", "2.0"])
    assert code == 1
    assert _last_json(capsys)["status"] == "error"


def test_unknown_experiment_is_rejected_by_parser():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["experiment", "bogus"])


def test_experiment_service_writes_report(tmp_path):
    config = parse_config(overrides={
        "mode": "experiment",
        "experiment.name": "gaussian",
        "output.dir": str(tmp_path),
        "ga.population": 4,
        "ga.elite_count": 1,
        "ga.max_generations": 2,
        "ga.n_jobs": 1,
    })
    summary = ExperimentService(config).run()
    assert summary["experiment"] == "gaussian"
    assert summary["settings"] == 1
    header, rows = read_report(tmp_path / "gaussian.csv")
    assert header["seed"] == "0"
    assert rows[0]["k"] == "3"
    assert 0.0 <= float(rows[0]["auc_mean"]) <= 1.0


def test_every_artifact_carries_the_run_header(synth_dir, tmp_path, capsys):
    synth_hash = read_dataset_header(synth_dir / "train.jsonl")["config_hash"]
    for name in ("validation.jsonl", "test.jsonl"):
        assert read_dataset_header(synth_dir / name)["config_hash"] == synth_hash
    schema_payload = json.loads((synth_dir / "schema.json").read_text(encoding="utf-8"))
    assert schema_payload["header"]["config_hash"] == synth_hash

    faults = tmp_path / "faults"
    assert main(["synth", "--kind", "faults", "--output", str(faults), "--seed", "2",
                 "--n-train", "12", "--n-validation", "12", "--n-test", "12", "--n-nontarget", "12"]) == 0
    assert load_stats(faults / "fit_stats.json").header["seed"] == "2"

    run = tmp_path / "run"
    assert main(_train_args(synth_dir, run)) == 0
    train_hash, _ = read_report(run / "k_selection.csv")
    assert load_stats(run / "stats.json").header == train_hash
    model = json.loads((run / "model.json").read_text(encoding="utf-8"))
    assert model["header"] == train_hash
    capsys.readouterr()
