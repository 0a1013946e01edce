"""
Labelled pattern collections and the train/validation/test split used by every experiment.
"""
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np

from ..dissimilarity.space import Pattern

TARGET = 1
NON_TARGET = 0


@dataclass
class LabeledSet:
    """Patterns with 1 = target, 0 = non-target labels."""

    patterns: List[Pattern] = field(default_factory=list)
    labels: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))

    def __post_init__(self):
        self.labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if self.labels.shape[0] != len(self.patterns):
            raise ValueError(f"{len(self.patterns)} patterns but {self.labels.shape[0]} labels")

    def __len__(self) -> int:
        return len(self.patterns)

    @property
    def targets(self) -> List[Pattern]:
        return [p for p, y in zip(self.patterns, self.labels) if y == TARGET]

    @property
    def n_targets(self) -> int:
        return int(np.sum(self.labels == TARGET))

    @classmethod
    def of_targets(cls, patterns: Sequence[Pattern]) -> "LabeledSet":
        return cls(list(patterns), np.full(len(patterns), TARGET, dtype=np.int64))

    @classmethod
    def of_nontargets(cls, patterns: Sequence[Pattern]) -> "LabeledSet":
        return cls(list(patterns), np.full(len(patterns), NON_TARGET, dtype=np.int64))

    def concat(self, other: "LabeledSet") -> "LabeledSet":
        return LabeledSet(self.patterns + other.patterns, np.concatenate([self.labels, other.labels]))

    def subset(self, indices: Sequence[int]) -> "LabeledSet":
        return LabeledSet([self.patterns[i] for i in indices], self.labels[np.asarray(indices, dtype=np.int64)])


@dataclass
class SplitSets:
    """A one-class problem instance: targets-only training set, mixed validation and test sets."""

    train: LabeledSet
    validation: LabeledSet
    test: LabeledSet


def split_problem(targets: LabeledSet, nontargets: LabeledSet, seed: int) -> SplitSets:
    """Targets in thirds over train/validation/test; non-targets halved over validation/test."""
    rng = np.random.default_rng(seed)
    t_idx = rng.permutation(len(targets))
    n_idx = rng.permutation(len(nontargets))
    a, b = len(t_idx) // 3, 2 * len(t_idx) // 3
    half = len(n_idx) // 2
    train = targets.subset(t_idx[:a])
    validation = targets.subset(t_idx[a:b]).concat(nontargets.subset(n_idx[:half]))
    test = targets.subset(t_idx[b:]).concat(nontargets.subset(n_idx[half:]))
    return SplitSets(train=train, validation=validation, test=test)
