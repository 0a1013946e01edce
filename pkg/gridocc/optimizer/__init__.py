"""
Genetic search over dissimilarity weights and cluster tolerances.
"""
from .genetic import GaResult, GeneticAlgorithm
from .training import Genome, TrainingTrace, TrainingProblem, TrainingOutcome, evolve, fitness_value, train_occ

__all__ = [
    "GaResult",
    "GeneticAlgorithm",
    "Genome",
    "TrainingTrace",
    "TrainingProblem",
    "TrainingOutcome",
    "evolve",
    "fitness_value",
    "train_occ",
]
