"""
Experiment runners: synthetic Gaussian problems, implicit FPR sweep,
benchmark datasets, the heterogeneous fault surrogate and the non-target sweep.
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..classifier.ensemble import Ensemble
from ..classifier.fuzzy import fuzzy_entropy
from ..core.errors import EvaluationError
from ..optimizer.training import TrainingOutcome, train_occ
from ..preprocessing.datasets import LabeledSet, SplitSets, split_problem
from ..preprocessing.faults import make_fault_problem
from ..preprocessing.synthetic import SyntheticSpec, generate_gaussian_clusters, plane_schema
from ..schemas.features import FeatureSchema
from ..schemas.reports import ExperimentRow
from ..schemas.run_config import GaConfig, ModelConfig
from ..schemas.stats import NormalizationStats
from .benchmarks import BENCHMARKS, load_benchmark, reference_auc
from .information import MIN_SERIES_LENGTH, mutual_information
from .metrics import ConfusionCounts, ConfusionMetrics, confusion_metrics, pearson_correlation, roc_auc

logger = logging.getLogger(__name__)

GAUSSIAN_NONTARGET_MARGIN = 0.2


def derive_seed(*keys: int) -> int:
    return int(np.random.SeedSequence(list(keys)).generate_state(1)[0])


@dataclass
class Assessment:
    counts: ConfusionCounts
    metrics: ConfusionMetrics
    auc: Optional[float]
    fe: float
    memberships: np.ndarray
    hard: np.ndarray


@dataclass
class TrialResult:
    k: int
    assessment: Assessment
    mi: Optional[float]
    outcome: TrainingOutcome


def evaluate_ensemble(ensemble: Ensemble, test: LabeledSet) -> Assessment:
    """Hard-decision metrics, AUC of the soft scores and fuzzy entropy on a labelled set."""
    if len(test) == 0:
        raise EvaluationError("cannot evaluate on an empty set")
    decisions = ensemble.decide(test.patterns)
    hard = np.array([d.hard for d in decisions], dtype=np.int64)
    memberships = np.array([d.membership for d in decisions])
    counts = ConfusionCounts.from_labels(test.labels, hard)
    auc = None
    if np.unique(test.labels).size == 2:
        auc = roc_auc(memberships, test.labels).auc
    return Assessment(
        counts=counts,
        metrics=confusion_metrics(counts),
        auc=auc,
        fe=fuzzy_entropy(memberships),
        memberships=memberships,
        hard=hard,
    )


def trace_mutual_information(outcome: TrainingOutcome) -> Optional[float]:
    trace = outcome.trace
    if len(trace.fitness) < MIN_SERIES_LENGTH:
        return None
    return mutual_information(trace.fitness, trace.weight_entropy)


def run_trial(
    problem: SplitSets,
    schema: FeatureSchema,
    ga: GaConfig,
    model: ModelConfig,
    seed: int,
    stats: Optional[NormalizationStats] = None,
) -> TrialResult:
    outcome = train_occ(ga, model, schema, problem.train.patterns, problem.validation, seed, stats)
    assessment = evaluate_ensemble(outcome.ensemble, problem.test)
    return TrialResult(k=outcome.k, assessment=assessment, mi=trace_mutual_information(outcome), outcome=outcome)


def _mean_std(values: Sequence[Optional[float]]):
    present = [v for v in values if v is not None]
    if not present:
        return None, None
    return float(np.mean(present)), float(np.std(present))


def aggregate(experiment: str, setting: str, trials: List[TrialResult], reference: Optional[str] = None) -> ExperimentRow:
    """Mean and standard deviation of every metric over repeated trials."""
    columns = {
        "fpr": [t.assessment.metrics.fpr for t in trials],
        "recall": [t.assessment.metrics.recall for t in trials],
        "precision": [t.assessment.metrics.precision for t in trials],
        "accuracy": [t.assessment.metrics.accuracy for t in trials],
        "auc": [t.assessment.auc for t in trials],
        "fe": [t.assessment.fe for t in trials],
        "mi": [t.mi for t in trials],
    }
    fields = {}
    for name, values in columns.items():
        mean, std = _mean_std(values)
        if name != "mi":
            mean, std = (0.0 if mean is None else mean), (0.0 if std is None else std)
        fields[f"{name}_mean"], fields[f"{name}_std"] = mean, std
    ks = sorted({t.k for t in trials})
    return ExperimentRow(
        experiment=experiment,
        setting=setting,
        k=ks[0] if len(ks) == 1 else -1,
        repeats=len(trials),
        reference_auc=reference,
        **fields,
    )


@dataclass
class ExperimentResult:
    rows: List[ExperimentRow] = field(default_factory=list)
    trials: List[List[TrialResult]] = field(default_factory=list)
    correlation: Optional[float] = None


def run_gaussian_experiment(ga: GaConfig, seed: int, repeats: int = 1, spec: Optional[SyntheticSpec] = None) -> ExperimentResult:
    """Three well-separated Gaussian clusters, k = 3, non-targets kept away from the clusters."""
    spec = spec or SyntheticSpec(nontarget_margin=GAUSSIAN_NONTARGET_MARGIN)
    model = ModelConfig(k_min=3, k_max=3)
    trials = []
    for r in range(repeats):
        trial_seed = derive_seed(seed, r)
        problem = generate_gaussian_clusters(spec.model_copy(update={"seed": trial_seed}))
        trials.append(run_trial(problem, plane_schema(), ga, model, trial_seed))
    result = ExperimentResult(rows=[aggregate("gaussian", "k=3", trials)], trials=[trials])
    logger.info(f"Gaussian experiment: test accuracy {result.rows[0].accuracy_mean:.4f}")
    return result


def implicit_fpr_spec(ratio: float, n_targets: int, spread: float, growth: float, base_ratio: float, seed: int) -> SyntheticSpec:
    """Targets per split fixed; non-targets per split = n_targets / ratio; spread scaled by (ratio / base_ratio)^growth."""
    scaled = spread * (ratio / base_ratio) ** growth
    return SyntheticSpec(
        spreads=[scaled] * 3,
        n_train=n_targets,
        n_validation=n_targets,
        n_test=n_targets,
        n_nontarget=int(round(n_targets / ratio)),
        seed=seed,
    )


def run_implicit_fpr_experiment(
    ratios: Sequence[float],
    ga: GaConfig,
    seed: int,
    n_targets: int = 150,
    spread: float = 0.03,
    growth: float = 0.5,
    repeats: int = 1,
) -> ExperimentResult:
    """
    Train on Gaussian targets against uniform non-targets for each ratio
    |train targets| / |test non-targets| and correlate ratio with test FPR.

    Raises:
        EvaluationError: Fewer than two ratios (correlation undefined)
    """
    if any(r <= 0 for r in ratios):
        raise EvaluationError("ratios must be positive")
    if len(ratios) < 2:
        raise EvaluationError("the implicit FPR correlation needs at least two ratios")
    model = ModelConfig(k_min=3, k_max=3)
    result = ExperimentResult()
    fprs = []
    for i, ratio in enumerate(ratios):
        trials = []
        for r in range(repeats):
            trial_seed = derive_seed(seed, i, r)
            spec = implicit_fpr_spec(ratio, n_targets, spread, growth, ratios[0], trial_seed)
            trials.append(run_trial(generate_gaussian_clusters(spec), plane_schema(), ga, model, trial_seed))
        row = aggregate("implicit-fpr", f"ratio={ratio:g}", trials)
        fprs.append(row.fpr_mean)
        result.rows.append(row)
        result.trials.append(trials)
        logger.info(f"Ratio {ratio:g}: test FPR {row.fpr_mean:.4f}, accuracy {row.accuracy_mean:.4f}")
    result.correlation = pearson_correlation(list(ratios), fprs)
    logger.info(f"Implicit FPR correlation {result.correlation:.4f}")
    return result


def run_uci_experiment(
    datasets: Sequence[str],
    ga: GaConfig,
    model: ModelConfig,
    seed: int,
    repeats: int = 5,
    data_dir: Optional[str] = None,
) -> ExperimentResult:
    """Targets split in thirds, non-targets halved over validation and test, repeated with derived seeds."""
    result = ExperimentResult()
    for d, name in enumerate(datasets):
        schema, targets, nontargets = load_benchmark(name, data_dir)
        trials = []
        for r in range(repeats):
            trial_seed = derive_seed(seed, d, r)
            trials.append(run_trial(split_problem(targets, nontargets, trial_seed), schema, ga, model, trial_seed))
        acronym = BENCHMARKS[name].acronym
        ref = reference_auc(acronym)
        row = aggregate("uci", name, trials, reference=f"{ref[0]:.3f}({ref[1]:.3f})" if ref else None)
        result.rows.append(row)
        result.trials.append(trials)
        logger.info(f"{name}: AUC {row.auc_mean:.4f} +/- {row.auc_std:.4f}")
    return result


def run_heterogeneous_experiment(
    ga: GaConfig,
    model: ModelConfig,
    seed: int,
    repeats: int = 1,
    ratio: float = 0.15,
    n_targets: int = 60,
) -> ExperimentResult:
    """Fault-record surrogate over all five feature kinds; one row per k."""
    result = ExperimentResult()
    for k in model.k_values:
        single = model.model_copy(update={"k_min": k, "k_max": k})
        trials = []
        for r in range(repeats):
            trial_seed = derive_seed(seed, k, r)
            schema, stats, problem = make_fault_problem(n_targets, n_targets, n_targets, ratio, trial_seed)
            trials.append(run_trial(problem, schema, ga, single, trial_seed, stats))
        row = aggregate("heterogeneous", f"ratio={ratio:g}", trials)
        result.rows.append(row)
        result.trials.append(trials)
        logger.info(f"Heterogeneous k={k}: AUC {row.auc_mean:.4f}, FPR {row.fpr_mean:.4f}")
    return result


def run_nontarget_sweep(
    counts: Sequence[int],
    ga: GaConfig,
    model: ModelConfig,
    seed: int,
    n_targets: int = 60,
) -> ExperimentResult:
    """Best configuration per non-target count, generation mechanism unchanged."""
    result = ExperimentResult()
    for i, count in enumerate(counts):
        if count <= 0:
            raise EvaluationError("non-target counts must be positive")
        trial_seed = derive_seed(seed, i)
        schema, stats, problem = make_fault_problem(n_targets, n_targets, n_targets, n_targets / count, trial_seed)
        trial = run_trial(problem, schema, ga, model, trial_seed, stats)
        result.rows.append(aggregate("nontarget-sweep", f"nontargets={count}", [trial]))
        result.trials.append([trial])
        logger.info(f"{count} non-targets: AUC {trial.assessment.auc}, accuracy {trial.assessment.metrics.accuracy:.4f}")
    return result
