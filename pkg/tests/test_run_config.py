import pytest

from gridocc.core.errors import ConfigError
from gridocc.schemas.run_config import RunMode, config_hash, parse_config

TRAIN_PATHS = {"data.schema": "schema.json", "data.train": "train.jsonl", "data.validation": "validation.jsonl"}


def _write(tmp_path, text):
    path = tmp_path / "run.toml"
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults_applied():
    config = parse_config(overrides={"mode": "train", **TRAIN_PATHS})
    assert config.mode == RunMode.TRAIN
    assert config.ga.alpha == 0.8
    assert config.ga.population == 50
    assert config.ga.max_generations == 250
    assert config.ga.elite_count == 2
    assert config.ga.crossover_fraction == 0.8
    assert config.data.schema_path == "schema.json"


def test_alpha_out_of_bounds():
    with pytest.raises(ConfigError, match="ga.alpha"):
        parse_config(overrides={"mode": "train", "ga.alpha": 1.5, **TRAIN_PATHS})


def test_unknown_key_is_named(tmp_path):
    path = _write(tmp_path, 'mode = "synth"\n[ga]\npopulaton = 10\n')
    with pytest.raises(ConfigError, match="populaton"):
        parse_config(path)


def test_flag_overrides_file(tmp_path):
    path = _write(tmp_path, 'mode = "synth"\nseed = 3\n[ga]\npopulation = 12\n')
    config = parse_config(path, {"seed": 9})
    assert config.seed == 9
    assert config.ga.population == 12


def test_none_overrides_are_ignored(tmp_path):
    path = _write(tmp_path, 'mode = "synth"\nseed = 3\n')
    assert parse_config(path, {"seed": None}).seed == 3


def test_missing_paths_per_mode():
    with pytest.raises(ConfigError, match="data.model"):
        parse_config(overrides={"mode": "classify", "data.input": "x.jsonl"})
    with pytest.raises(ConfigError, match="experiment.name"):
        parse_config(overrides={"mode": "experiment"})


def test_cross_field_checks():
    with pytest.raises(ConfigError):
        parse_config(overrides={"mode": "synth", "ga.population": 4, "ga.elite_count": 4})
    with pytest.raises(ConfigError):
        parse_config(overrides={"mode": "synth", "model.k_min": 3, "model.k_max": 2})


def test_invalid_toml(tmp_path):
    path = _write(tmp_path, "mode = \n")
    with pytest.raises(ConfigError):
        parse_config(path)


def test_config_hash_is_stable():
    first = parse_config(overrides={"mode": "synth", "seed": 1})
    second = parse_config(overrides={"mode": "synth", "seed": 1})
    third = parse_config(overrides={"mode": "synth", "seed": 2})
    assert config_hash(first) == config_hash(second)
    assert config_hash(first) != config_hash(third)


def test_config_hash_ignores_worker_count():
    serial = parse_config(overrides={"mode": "synth", "ga.n_jobs": 1})
    parallel = parse_config(overrides={"mode": "synth", "ga.n_jobs": 4})
    larger = parse_config(overrides={"mode": "synth", "ga.n_jobs": 4, "ga.population": 60})
    assert config_hash(serial) == config_hash(parallel)
    assert config_hash(parallel) != config_hash(larger)
