"""
Run configuration: TOML file blocks, command-line overrides and validation.
"""
import hashlib
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..clustering.kmedoids import ExtentStrategy
from ..core.config import settings
from ..core.errors import ConfigError

logger = logging.getLogger(__name__)


class RunMode(str, Enum):
    TRAIN = "train"
    CLASSIFY = "classify"
    EVALUATE = "evaluate"
    SYNTH = "synth"
    EXPERIMENT = "experiment"


class ExperimentName(str, Enum):
    IMPLICIT_FPR = "implicit-fpr"
    GAUSSIAN = "gaussian"
    UCI = "uci"
    HETEROGENEOUS = "heterogeneous"
    NONTARGET_SWEEP = "nontarget-sweep"


class GaConfig(BaseModel):
    """Genetic algorithm block ([ga])."""
    model_config = ConfigDict(extra="forbid")

    population: int = Field(50, ge=2, description="Individuals per generation")
    crossover_fraction: float = Field(0.8, ge=0.0, le=1.0)
    elite_count: int = Field(2, ge=0)
    max_generations: int = Field(250, ge=1)
    stall_generations: int = Field(50, ge=1, description="Window of the stall criterion")
    stall_tolerance: float = Field(1e-6, ge=0.0)
    alpha: float = Field(0.8, ge=0.0, le=1.0, description="Accuracy share of the fitness")
    sigma_max: float = Field(0.5, gt=0.0, description="Upper bound of every tolerance gene")
    normalize_sigma_term: bool = Field(False, description="Divide the tolerance term by k")
    mutation_scale_start: float = Field(0.1, gt=0.0, le=1.0)
    mutation_scale_end: float = Field(0.01, gt=0.0, le=1.0)
    replicates: int = Field(3, ge=1, description="k-medoids replicates per genome")
    n_jobs: int = Field(default_factory=lambda: settings.N_JOBS, ge=1)

    @model_validator(mode="after")
    def _check_population(self):
        if self.elite_count >= self.population:
            raise ValueError(f"elite_count {self.elite_count} must be below population {self.population}")
        return self


class ModelConfig(BaseModel):
    """[model] block."""
    model_config = ConfigDict(extra="forbid")

    k_min: int = Field(1, ge=1)
    k_max: int = Field(1, ge=1)
    extent_strategy: ExtentStrategy = ExtentStrategy.MEAN

    @model_validator(mode="after")
    def _check_range(self):
        if self.k_min > self.k_max:
            raise ValueError(f"k_min {self.k_min} above k_max {self.k_max}")
        return self

    @property
    def k_values(self) -> List[int]:
        return list(range(self.k_min, self.k_max + 1))


class DataConfig(BaseModel):
    """[data] block: artifact paths."""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    schema_path: Optional[str] = Field(None, alias="schema")
    train: Optional[str] = Field(None, description="Targets-only training dataset")
    validation: Optional[str] = Field(None, description="Labelled validation dataset")
    test: Optional[str] = Field(None, description="Labelled test dataset")
    input: Optional[str] = Field(None, description="Records to classify")
    stats: Optional[str] = None
    model: Optional[str] = None


class SynthConfig(BaseModel):
    """[synth] block: which generated problem to write."""
    model_config = ConfigDict(extra="forbid")

    kind: str = Field("gaussian", pattern="^(gaussian|faults)$")
    n_train: int = Field(150, ge=1)
    n_validation: int = Field(150, ge=0)
    n_test: int = Field(150, ge=0)
    n_nontarget: int = Field(150, ge=0)
    ratio: Optional[float] = Field(None, gt=0.0, description="n_train / non-targets; overrides n_nontarget")
    spread: float = Field(0.03, gt=0.0)


class ExperimentConfig(BaseModel):
    """[experiment] block."""
    model_config = ConfigDict(extra="forbid")

    name: Optional[ExperimentName] = None
    ratios: List[float] = Field(default_factory=lambda: [0.1, 0.175, 0.25, 0.325, 0.4, 0.475])
    repeats: int = Field(1, ge=1)
    n_targets: int = Field(150, ge=3, description="Targets per split")
    spread: float = Field(0.03, gt=0.0)
    spread_growth: float = Field(0.5, ge=0.0, description="Spread exponent over ratio / first ratio")
    datasets: List[str] = Field(default_factory=lambda: ["iris", "breast_cancer"])
    data_dir: Optional[str] = Field(None, description="Directory of the CSV benchmark files")
    nontarget_counts: List[int] = Field(default_factory=lambda: [150, 300, 600, 1200])

    @model_validator(mode="after")
    def _check_ratios(self):
        if any(r <= 0 for r in self.ratios):
            raise ValueError("ratios must be positive")
        return self


class OutputConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dir: str = Field(default_factory=lambda: settings.OUTPUT_DIR)


class RunConfig(BaseModel):
    """Complete, validated run configuration."""
    model_config = ConfigDict(extra="forbid")

    mode: RunMode
    seed: int = Field(0, ge=0)
    data: DataConfig = Field(default_factory=DataConfig)
    model: ModelConfig = Field(default_factory=ModelConfig)
    ga: GaConfig = Field(default_factory=GaConfig)
    synth: SynthConfig = Field(default_factory=SynthConfig)
    experiment: ExperimentConfig = Field(default_factory=ExperimentConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def _check_paths(self):
        required = {
            RunMode.TRAIN: ["schema_path", "train", "validation"],
            RunMode.CLASSIFY: ["model", "input"],
            RunMode.EVALUATE: ["model", "test"],
        }.get(self.mode, [])
        missing = [name for name in required if getattr(self.data, name) is None]
        if missing:
            names = ", ".join("data." + ("schema" if m == "schema_path" else m) for m in missing)
            raise ValueError(f"mode '{self.mode.value}' requires {names}")
        if self.mode == RunMode.EXPERIMENT and self.experiment.name is None:
            raise ValueError("mode 'experiment' requires experiment.name")
        return self


def _set_dotted(target: Dict[str, Any], dotted: str, value: Any) -> None:
    node = target
    parts = dotted.split(".")
    for part in parts[:-1]:
        child = node.setdefault(part, {})
        if not isinstance(child, dict):
            raise ConfigError(f"'{part}' is not a block")
        node = child
    node[parts[-1]] = value


def _format_validation_error(error: ValidationError) -> str:
    problems = []
    for item in error.errors():
        where = ".".join(str(part) for part in item["loc"]) or "config"
        problems.append(f"{where}: {item['msg']}")
    return "; ".join(problems)


def parse_config(path: Optional[Union[str, Path]] = None, overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """
    Load a TOML run configuration and apply command-line overrides.

    Args:
        path: Optional TOML file with [data], [model], [ga], [synth],
            [experiment] and [output] blocks and top-level mode/seed
        overrides: Dotted keys (e.g. "ga.population") taking precedence over
            the file; None values are ignored

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: Unparseable file, unknown key or out-of-bounds value
    """
    payload: Dict[str, Any] = {}
    if path is not None:
        with open(path, "rb") as handle:
            try:
                payload = tomllib.load(handle)
            except tomllib.TOMLDecodeError as e:
                raise ConfigError(f"{path}: {e}") from e
    for key, value in (overrides or {}).items():
        if value is not None:
            _set_dotted(payload, key, value)
    try:
        config = RunConfig.model_validate(payload)
    except ValidationError as e:
        raise ConfigError(_format_validation_error(e)) from e
    logger.debug(f"Parsed run configuration (mode {config.mode.value}, seed {config.seed})")
    return config


def config_hash(config: RunConfig) -> str:
    """sha256 of the canonical JSON dump; ga.n_jobs is left out, it never changes results."""
    canonical = config.model_dump_json(by_alias=True, exclude={"ga": {"n_jobs"}})
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()
