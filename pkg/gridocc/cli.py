"""
Command line entry point: gridocc {train,classify,evaluate,synth,experiment}.

Every flag maps onto a dotted RunConfig key and overrides the TOML file.
The last line printed is a JSON summary of the run.
"""
import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from .core.errors import EXIT_IO, EXIT_OK, OccError
from .schemas.run_config import ExperimentName, RunConfig, RunMode, parse_config
from .services.experiment_service import ExperimentService
from .services.pipeline_service import OccPipelineService
from .utils.logging_config import setup_logging

logger = logging.getLogger(__name__)

# flag dest -> dotted config key
COMMON_FLAGS = {
    "seed": "seed",
    "output": "output.dir",
    "k_min": "model.k_min",
    "k_max": "model.k_max",
    "extent": "model.extent_strategy",
    "population": "ga.population",
    "generations": "ga.max_generations",
    "elites": "ga.elite_count",
    "crossover": "ga.crossover_fraction",
    "alpha": "ga.alpha",
    "sigma_max": "ga.sigma_max",
    "n_jobs": "ga.n_jobs",
}
DATA_FLAGS = {
    "schema": "data.schema",
    "train": "data.train",
    "validation": "data.validation",
    "test": "data.test",
    "input": "data.input",
    "stats": "data.stats",
    "model": "data.model",
}
SYNTH_FLAGS = {
    "kind": "synth.kind",
    "n_train": "synth.n_train",
    "n_validation": "synth.n_validation",
    "n_test": "synth.n_test",
    "n_nontarget": "synth.n_nontarget",
    "ratio": "synth.ratio",
    "spread": "synth.spread",
}
EXPERIMENT_FLAGS = {
    "ratios": "experiment.ratios",
    "repeats": "experiment.repeats",
    "datasets": "experiment.datasets",
    "data_dir": "experiment.data_dir",
    "nontarget_counts": "experiment.nontarget_counts",
}


def _floats(text: str) -> List[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def _ints(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v.strip()]


def _names(text: str) -> List[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", "-c", help="TOML run configuration")
    parser.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--output", "-o", help="Output directory")
    parser.add_argument("--k-min", dest="k_min", type=int)
    parser.add_argument("--k-max", dest="k_max", type=int)
    parser.add_argument("--extent", choices=["mean", "max", "std"])
    parser.add_argument("--population", type=int)
    parser.add_argument("--generations", type=int)
    parser.add_argument("--elites", type=int)
    parser.add_argument("--crossover", type=float)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--sigma-max", dest="sigma_max", type=float)
    parser.add_argument("--n-jobs", dest="n_jobs", type=int)


def _add_data(parser: argparse.ArgumentParser) -> None:
    for name in DATA_FLAGS:
        parser.add_argument(f"--{name}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridocc", description="One-class classification over heterogeneous patterns")
    commands = parser.add_subparsers(dest="command", required=True)

    for mode in (RunMode.TRAIN, RunMode.CLASSIFY, RunMode.EVALUATE):
        sub = commands.add_parser(mode.value)
        _add_common(sub)
        _add_data(sub)

    synth = commands.add_parser(RunMode.SYNTH.value)
    _add_common(synth)
    synth.add_argument("--kind", choices=["gaussian", "faults"])
    synth.add_argument("--n-train", dest="n_train", type=int)
    synth.add_argument("--n-validation", dest="n_validation", type=int)
    synth.add_argument("--n-test", dest="n_test", type=int)
    synth.add_argument("--n-nontarget", dest="n_nontarget", type=int)
    synth.add_argument("--ratio", type=float)
    synth.add_argument("--spread", type=float)

    experiment = commands.add_parser(RunMode.EXPERIMENT.value)
    experiment.add_argument("name", choices=[e.value for e in ExperimentName])
    _add_common(experiment)
    experiment.add_argument("--ratios", type=_floats, help="Comma-separated ratios")
    experiment.add_argument("--repeats", type=int)
    experiment.add_argument("--datasets", type=_names, help="Comma-separated benchmark names")
    experiment.add_argument("--data-dir", dest="data_dir")
    experiment.add_argument("--nontarget-counts", dest="nontarget_counts", type=_ints)
    return parser


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Dotted config keys for every flag that was given."""
    overrides: Dict[str, Any] = {"mode": args.command}
    if args.command == RunMode.EXPERIMENT.value:
        overrides["experiment.name"] = args.name
    for table in (COMMON_FLAGS, DATA_FLAGS, SYNTH_FLAGS, EXPERIMENT_FLAGS):
        for dest, key in table.items():
            value = getattr(args, dest, None)
            if value is not None:
                overrides[key] = value
    return overrides


def run(config: RunConfig) -> Dict:
    """Execute the configured mode and return its summary."""
    if config.mode == RunMode.EXPERIMENT:
        return ExperimentService(config).run()
    service = OccPipelineService(config)
    return {
        RunMode.TRAIN: service.train,
        RunMode.CLASSIFY: service.classify,
        RunMode.EVALUATE: service.evaluate,
        RunMode.SYNTH: service.synth,
    }[config.mode]()


def _summary(payload: Dict) -> str:
    return json.dumps(payload, sort_keys=True, default=str)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        config = parse_config(args.config, overrides_from_args(args))
        summary = run(config)
    except OccError as e:
        logger.error(f"{args.command} failed: {e}")
        print(_summary({"status": "error", "mode": args.command, "error": str(e), "exit_code": e.exit_code}))
        return e.exit_code
    except OSError as e:
        logger.error(f"{args.command} failed: {e}")
        print(_summary({"status": "error", "mode": args.command, "error": str(e), "exit_code": EXIT_IO}))
        return EXIT_IO
    print(_summary({"status": "ok", **summary}))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
