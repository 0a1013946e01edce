"""
Decision regions, hard and soft decisions, and the replicate ensemble.
"""
from .fuzzy import sigmoid_membership, fuzzy_entropy
from .model import Decision, OccModel, nearest_representative, hard_classify, membership
from .ensemble import Ensemble, ensemble_classify, select_replicate, select_by_entropy

__all__ = [
    "sigmoid_membership",
    "fuzzy_entropy",
    "Decision",
    "OccModel",
    "nearest_representative",
    "hard_classify",
    "membership",
    "Ensemble",
    "ensemble_classify",
    "select_replicate",
    "select_by_entropy",
]
