"""
Real-coded genetic algorithm over box-bounded genomes.

Generation step: elites copied unchanged, rank-scaled stochastic uniform
selection of parents, scattered crossover for a fixed share of the children,
Gaussian mutation (shrinking scale, clipped to bounds) for the rest.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from ..schemas.run_config import GaConfig

logger = logging.getLogger(__name__)

FitnessFn = Callable[[np.ndarray], np.ndarray]


@dataclass
class GaResult:
    best: np.ndarray
    best_fitness: float
    generations: int
    fitness_trace: List[float] = field(default_factory=list)
    best_history: List[np.ndarray] = field(default_factory=list)


def rank_scaling(fitness: np.ndarray) -> np.ndarray:
    """Expectation proportional to 1/sqrt(rank), best rank 1; ties keep the lower index first."""
    order = np.argsort(-fitness, kind="stable")
    ranks = np.empty(fitness.size, dtype=np.float64)
    ranks[order] = np.arange(1, fitness.size + 1)
    scaled = 1.0 / np.sqrt(ranks)
    return scaled / scaled.sum()


def stochastic_uniform(expectation: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """Lay out expectations on a line and walk it with n equally spaced pointers."""
    if n <= 0:
        return np.zeros(0, dtype=np.int64)
    wheel = np.cumsum(expectation / expectation.sum())
    step = 1.0 / n
    pointers = rng.uniform(0.0, step) + step * np.arange(n)
    picks = np.searchsorted(wheel, pointers, side="right")
    return np.minimum(picks, expectation.size - 1)


def scattered_crossover(p1: np.ndarray, p2: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    mask = rng.random(p1.size) < 0.5
    return np.where(mask, p1, p2)


def gaussian_mutation(
    parent: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    scale: float,
    rng: np.random.Generator,
) -> np.ndarray:
    child = parent + rng.normal(0.0, 1.0, parent.size) * scale * (upper - lower)
    return np.clip(child, lower, upper)


class GeneticAlgorithm:
    """
    Maximizes a batch fitness function over [lower, upper].

    Every generation draws from its own generator derived from
    (seed, stream, generation), so results do not depend on evaluation order.
    """

    def __init__(
        self,
        lower: np.ndarray,
        upper: np.ndarray,
        config: GaConfig,
        seed: int,
        stream: int = 0,
    ):
        self.lower = np.asarray(lower, dtype=np.float64)
        self.upper = np.asarray(upper, dtype=np.float64)
        if self.lower.shape != self.upper.shape or np.any(self.upper < self.lower):
            raise ValueError("genome bounds must have equal shape and lower <= upper")
        self.config = config
        self.seed = seed
        self.stream = stream

    def _rng(self, generation: int) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.seed, self.stream, generation]))

    def mutation_scale(self, generation: int) -> float:
        start, end = self.config.mutation_scale_start, self.config.mutation_scale_end
        span = max(1, self.config.max_generations - 1)
        return start + (end - start) * min(generation, span) / span

    def initial_population(self, seeds: Optional[np.ndarray] = None) -> np.ndarray:
        rng = self._rng(0)
        size = self.config.population
        population = rng.uniform(self.lower, self.upper, size=(size, self.lower.size))
        if seeds is not None and len(seeds):
            seeds = np.clip(np.atleast_2d(seeds), self.lower, self.upper)[:size]
            population[: seeds.shape[0]] = seeds
        return population

    def next_generation(
        self,
        population: np.ndarray,
        fitness: np.ndarray,
        generation: int,
    ) -> tuple:
        """Returns (children, elite indices); elites are the first rows of the new population."""
        cfg = self.config
        rng = self._rng(generation)
        n_elite = cfg.elite_count
        n_children = cfg.population - n_elite
        n_cross = int(round(cfg.crossover_fraction * n_children))
        n_mut = n_children - n_cross

        elite = np.argsort(-fitness, kind="stable")[:n_elite]
        parents = stochastic_uniform(rank_scaling(fitness), 2 * n_cross + n_mut, rng)
        parents = rng.permutation(parents)

        children = np.empty((n_children, population.shape[1]))
        for c in range(n_cross):
            children[c] = scattered_crossover(population[parents[2 * c]], population[parents[2 * c + 1]], rng)
        scale = self.mutation_scale(generation)
        for c in range(n_mut):
            parent = population[parents[2 * n_cross + c]]
            children[n_cross + c] = gaussian_mutation(parent, self.lower, self.upper, scale, rng)
        return children, elite

    def run(self, evaluate: FitnessFn, seeds: Optional[np.ndarray] = None) -> GaResult:
        """
        Evolve until max_generations or until the best fitness improves by less
        than stall_tolerance over stall_generations generations.

        Args:
            evaluate: Maps a (n, genome length) array to n fitness values
            seeds: Optional genomes placed in the initial population

        Returns:
            GaResult with the best genome and per-generation traces
        """
        cfg = self.config
        population = self.initial_population(seeds)
        fitness = np.asarray(evaluate(population), dtype=np.float64)
        trace: List[float] = []
        history: List[np.ndarray] = []

        generation = 0
        while True:
            best = int(np.argmax(fitness))
            trace.append(float(fitness[best]))
            history.append(population[best].copy())
            logger.debug(f"Generation {generation}: best fitness {fitness[best]:.6f}")
            generation += 1
            if generation >= cfg.max_generations:
                break
            if len(trace) > cfg.stall_generations and trace[-1] - trace[-1 - cfg.stall_generations] < cfg.stall_tolerance:
                logger.debug(f"Stalled after {generation} generations")
                break
            children, elite = self.next_generation(population, fitness, generation)
            child_fitness = np.asarray(evaluate(children), dtype=np.float64) if len(children) else np.zeros(0)
            population = np.vstack([population[elite], children])
            fitness = np.concatenate([fitness[elite], child_fitness])

        best = int(np.argmax(fitness))
        return GaResult(
            best=population[best].copy(),
            best_fitness=float(fitness[best]),
            generations=generation,
            fitness_trace=trace,
            best_history=history,
        )
