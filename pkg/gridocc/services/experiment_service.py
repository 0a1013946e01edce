"""
Experiment service: runs one named experiment and writes its aggregated report
"""
import logging
from pathlib import Path
from typing import Dict

from ..core.errors import ConfigError
from ..evaluation.experiments import (
    ExperimentResult,
    run_gaussian_experiment,
    run_heterogeneous_experiment,
    run_implicit_fpr_experiment,
    run_nontarget_sweep,
    run_uci_experiment,
)
from ..schemas.reports import ExperimentRow, RunHeader
from ..schemas.run_config import ExperimentName, RunConfig, config_hash
from ..storage.file_handler import write_report

logger = logging.getLogger(__name__)


class ExperimentService:
    """Dispatches [experiment] settings to the experiment runners"""

    def __init__(self, config: RunConfig):
        self.config = config
        self.output_dir = Path(config.output.dir)
        self.header = RunHeader(config_hash=config_hash(config), seed=config.seed)

    def gaussian(self) -> ExperimentResult:
        return run_gaussian_experiment(self.config.ga, self.config.seed, repeats=self.config.experiment.repeats)

    def implicit_fpr(self) -> ExperimentResult:
        exp = self.config.experiment
        return run_implicit_fpr_experiment(
            exp.ratios,
            self.config.ga,
            self.config.seed,
            n_targets=exp.n_targets,
            spread=exp.spread,
            growth=exp.spread_growth,
            repeats=exp.repeats,
        )

    def uci(self) -> ExperimentResult:
        exp = self.config.experiment
        return run_uci_experiment(
            exp.datasets,
            self.config.ga,
            self.config.model,
            self.config.seed,
            repeats=exp.repeats,
            data_dir=exp.data_dir,
        )

    def heterogeneous(self) -> ExperimentResult:
        return run_heterogeneous_experiment(
            self.config.ga,
            self.config.model,
            self.config.seed,
            repeats=self.config.experiment.repeats,
        )

    def nontarget_sweep(self) -> ExperimentResult:
        return run_nontarget_sweep(self.config.experiment.nontarget_counts, self.config.ga, self.config.model, self.config.seed)

    def run(self) -> Dict:
        """
        Run the configured experiment

        Returns:
            Dictionary with the report path and headline numbers
        """
        name = self.config.experiment.name
        runners = {
            ExperimentName.GAUSSIAN: self.gaussian,
            ExperimentName.IMPLICIT_FPR: self.implicit_fpr,
            ExperimentName.UCI: self.uci,
            ExperimentName.HETEROGENEOUS: self.heterogeneous,
            ExperimentName.NONTARGET_SWEEP: self.nontarget_sweep,
        }
        if name not in runners:
            raise ConfigError(f"unknown experiment '{name}'")

        logger.info(f"Starting experiment {name.value} (seed {self.config.seed})")
        result = runners[name]()
        report = self.output_dir / f"{name.value}.csv"
        write_report(report, result.rows, self.header, row_type=ExperimentRow)

        summary = {
            "mode": "experiment",
            "experiment": name.value,
            "report": str(report),
            "settings": len(result.rows),
            "auc": [row.auc_mean for row in result.rows],
            "accuracy": [row.accuracy_mean for row in result.rows],
        }
        if result.correlation is not None:
            summary["correlation"] = result.correlation
        return summary
