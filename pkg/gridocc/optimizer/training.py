"""
Genome fitness, GA synthesis of weights and tolerances per k, and final model selection.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..classifier.ensemble import Ensemble, select_by_entropy
from ..classifier.fuzzy import sigmoid_membership
from ..classifier.model import OccModel
from ..clustering.kmedoids import ExtentStrategy, k_medoids, partition_extents
from ..core.errors import TrainingError
from ..dissimilarity.dtw import fit_ts_normalizer
from ..dissimilarity.space import FeatureSpace, Pattern, weighted_norm
from ..evaluation.information import weight_entropy
from ..preprocessing.datasets import LabeledSet
from ..schemas.features import FeatureSchema
from ..schemas.reports import KSelectionRow
from ..schemas.run_config import GaConfig, ModelConfig
from ..schemas.stats import NormalizationStats
from .genetic import GeneticAlgorithm

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Genome:
    """Weights in [0, 1]^m followed by tolerances in [0, sigma_max]^k."""

    weights: np.ndarray
    sigmas: np.ndarray

    @classmethod
    def from_vector(cls, vector: np.ndarray, m: int) -> "Genome":
        vector = np.asarray(vector, dtype=np.float64)
        return cls(weights=vector[:m].copy(), sigmas=vector[m:].copy())

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.weights, self.sigmas])


@dataclass
class TrainingTrace:
    fitness: List[float] = field(default_factory=list)
    weight_entropy: List[float] = field(default_factory=list)

    def is_non_decreasing(self) -> bool:
        return all(b >= a for a, b in zip(self.fitness, self.fitness[1:]))


@dataclass
class ReplicateOutcome:
    representatives: np.ndarray
    extents: np.ndarray
    accuracy: float
    memberships: np.ndarray


def fitness_value(accuracy: float, sigmas: Sequence[float], alpha: float, normalize: bool = False) -> float:
    """alpha * accuracy + (1 - alpha) * sum(1 - sigma_i), the sum optionally divided by k."""
    sigmas = np.asarray(sigmas, dtype=np.float64)
    tolerance = float(np.sum(1.0 - sigmas))
    if normalize and sigmas.size:
        tolerance /= sigmas.size
    return alpha * accuracy + (1.0 - alpha) * tolerance


def replicate_seeds(seed: int, k: int, count: int) -> List[int]:
    """k-medoids seeds, fixed per (run seed, k, replicate) for a whole GA run."""
    return [int(np.random.SeedSequence([seed, k, r]).generate_state(1)[0]) for r in range(count)]


class TrainingProblem:
    """
    Precomputed feature-wise dissimilarities between the training set and
    itself and between the validation and training sets.

    Every genome evaluation only re-weights these tensors.
    """

    def __init__(
        self,
        space: FeatureSpace,
        train: Sequence[Pattern],
        validation: LabeledSet,
        extent_strategy: ExtentStrategy = ExtentStrategy.MEAN,
    ):
        if len(train) == 0:
            raise TrainingError("training set is empty")
        if len(validation) == 0:
            raise TrainingError("validation set is empty")
        if validation.n_targets in (0, len(validation)):
            logger.warning("Validation set holds a single class; accuracy only measures that class")
        self.space = space
        self.train = list(train)
        self.validation = validation
        self.extent_strategy = ExtentStrategy(extent_strategy)
        encoded_train = space.encode(self.train)
        self.train_components = space.component_tensor(encoded_train)
        self.validation_components = space.component_tensor(space.encode(validation.patterns), encoded_train)
        self.labels = validation.labels
        logger.info(
            f"Prepared training problem: {len(self.train)} training, {len(validation)} validation patterns, "
            f"{space.m} features"
        )

    @property
    def m(self) -> int:
        return self.space.m

    def train_matrix(self, weights: np.ndarray) -> np.ndarray:
        D = weighted_norm(self.train_components, weights)
        D = 0.5 * (D + D.T)
        np.fill_diagonal(D, 0.0)
        return D

    def replicate(self, weights: np.ndarray, sigmas: np.ndarray, k: int, seed: int, D: Optional[np.ndarray] = None) -> ReplicateOutcome:
        D = self.train_matrix(weights) if D is None else D
        partition = k_medoids(D, k, seed)
        reps = np.asarray(partition.representatives, dtype=np.int64)
        extents = partition_extents(partition, D, self.extent_strategy)
        Dv = weighted_norm(self.validation_components[:, reps, :], weights)
        winners = np.argmin(Dv, axis=1)
        distances = Dv[np.arange(Dv.shape[0]), winners]
        hard = (distances <= (extents + sigmas)[winners]).astype(np.int64)
        accuracy = float(np.mean(hard == self.labels))
        mu = np.atleast_1d(sigmoid_membership(distances, extents[winners], (extents + sigmas / 2.0)[winners]))
        return ReplicateOutcome(representatives=reps, extents=extents, accuracy=accuracy, memberships=mu)

    def replicates(self, genome: Genome, k: int, seeds: Sequence[int]) -> List[ReplicateOutcome]:
        D = self.train_matrix(genome.weights)
        return [self.replicate(genome.weights, genome.sigmas, k, s, D) for s in seeds]

    def fitness(self, genome: Genome, k: int, seeds: Sequence[int], alpha: float, normalize: bool = False) -> float:
        outcomes = self.replicates(genome, k, seeds)
        accuracy = float(np.mean([o.accuracy for o in outcomes]))
        return fitness_value(accuracy, genome.sigmas, alpha, normalize)

    def build_ensemble(
        self,
        genome: Genome,
        k: int,
        seeds: Sequence[int],
        stats: Optional[NormalizationStats] = None,
    ) -> Ensemble:
        models = []
        for outcome in self.replicates(genome, k, seeds):
            models.append(OccModel(
                schema=self.space.schema,
                weights=genome.weights,
                representatives=[self.train[i] for i in outcome.representatives],
                extents=outcome.extents,
                sigmas=genome.sigmas,
                normalizer=self.space.normalizer,
                stats=stats,
                extent_strategy=self.extent_strategy,
            ))
        ensemble = Ensemble(replicates=models, seeds=list(seeds))
        return select_by_entropy(ensemble, self.validation.patterns)


def evolve(
    config: GaConfig,
    problem: TrainingProblem,
    k: int,
    seed: int,
) -> Tuple[Genome, TrainingTrace, float, int]:
    """
    Run the GA for one partition order.

    Returns:
        (best genome, trace, best fitness, generations run)
    """
    m = problem.m
    lower = np.zeros(m + k)
    upper = np.concatenate([np.ones(m), np.full(k, config.sigma_max)])
    seeds = replicate_seeds(seed, k, config.replicates)

    def score(vector: np.ndarray) -> float:
        return problem.fitness(Genome.from_vector(vector, m), k, seeds, config.alpha, config.normalize_sigma_term)

    def evaluate(population: np.ndarray) -> np.ndarray:
        if config.n_jobs > 1 and len(population) > 1:
            with ThreadPoolExecutor(max_workers=config.n_jobs) as pool:
                return np.array(list(pool.map(score, population)))
        return np.array([score(v) for v in population])

    ga = GeneticAlgorithm(lower, upper, config, seed=seed, stream=k)
    # unit weights with zero tolerance start the search from the plain metric
    result = ga.run(evaluate, seeds=np.concatenate([np.ones(m), np.zeros(k)])[None, :])
    trace = TrainingTrace(
        fitness=list(result.fitness_trace),
        weight_entropy=[weight_entropy(best[:m]) for best in result.best_history],
    )
    logger.info(f"k={k}: best fitness {result.best_fitness:.4f} after {result.generations} generations")
    return Genome.from_vector(result.best, m), trace, result.best_fitness, result.generations


@dataclass
class TrainingOutcome:
    ensemble: Ensemble
    rows: List[KSelectionRow]
    traces: Dict[int, TrainingTrace]
    genomes: Dict[int, Genome]
    ensembles: Dict[int, Ensemble]

    @property
    def k(self) -> int:
        return self.ensemble.k

    @property
    def trace(self) -> TrainingTrace:
        return self.traces[self.k]


def _voted_accuracy(ensemble: Ensemble, validation: LabeledSet) -> float:
    hard = np.array([d.hard for d in ensemble.decide(validation.patterns)])
    return float(np.mean(hard == validation.labels))


def train_occ(
    ga: GaConfig,
    model: ModelConfig,
    schema: FeatureSchema,
    train: Sequence[Pattern],
    validation: LabeledSet,
    seed: int,
    stats: Optional[NormalizationStats] = None,
) -> TrainingOutcome:
    """
    Synthesize one ensemble per k and keep the best.

    The final choice maximizes validation accuracy of the voted ensemble,
    then minimizes the fuzzy entropy of its selected replicate, then prefers
    the lowest k.

    Args:
        ga: Genetic algorithm settings
        model: k range and extent strategy
        schema: Feature schema of every pattern
        train: Normalized targets-only training patterns
        validation: Labelled validation patterns
        seed: Run seed
        stats: Normalization statistics stored with the model

    Returns:
        TrainingOutcome with the selected ensemble and the per-k report
    """
    train = list(train)
    if model.k_max > len(train):
        raise TrainingError(f"k range [{model.k_min}, {model.k_max}] exceeds training set size {len(train)}")
    normalizer = fit_ts_normalizer(schema, train)
    problem = TrainingProblem(FeatureSpace(schema, normalizer), train, validation, model.extent_strategy)

    rows, traces, genomes, ensembles = [], {}, {}, {}
    for k in model.k_values:
        genome, trace, best_fitness, generations = evolve(ga, problem, k, seed)
        ensemble = problem.build_ensemble(genome, k, replicate_seeds(seed, k, ga.replicates), stats)
        accuracy = _voted_accuracy(ensemble, validation)
        fe = ensemble.validation_entropy[ensemble.selected]
        rows.append(KSelectionRow(
            k=k,
            fitness=best_fitness,
            validation_accuracy=accuracy,
            validation_fe=fe,
            generations=generations,
        ))
        traces[k], genomes[k], ensembles[k] = trace, genome, ensemble
        logger.info(f"k={k}: validation accuracy {accuracy:.4f}, fuzzy entropy {fe:.4f}")

    best = min(rows, key=lambda r: (-r.validation_accuracy, r.validation_fe, r.k))
    best.selected = True
    logger.info(f"Selected k={best.k} (validation accuracy {best.validation_accuracy:.4f})")
    return TrainingOutcome(
        ensemble=ensembles[best.k],
        rows=rows,
        traces=traces,
        genomes=genomes,
        ensembles=ensembles,
    )
