import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import numpy as np
import pytest

from gridocc.dissimilarity.space import Pattern
from gridocc.schemas.features import FeatureDescriptor, FeatureKind, FeatureSchema, Scaling
from gridocc.schemas.run_config import GaConfig


@pytest.fixture
def mixed_schema():
    """One feature of every kind, already normalized."""
    return FeatureSchema(features=[
        FeatureDescriptor(name="phase", kind=FeatureKind.CATEGORICAL, domain=["L1", "L2", "L3"]),
        FeatureDescriptor(name="load", kind=FeatureKind.QUANTITATIVE, scaling=Scaling.NONE),
        FeatureDescriptor(name="hour", kind=FeatureKind.CIRCULAR, period=24),
        FeatureDescriptor(name="section", kind=FeatureKind.SPECIAL, scaling=Scaling.NONE),
        FeatureDescriptor(name="alarms", kind=FeatureKind.TIMESERIES),
    ])


@pytest.fixture
def mixed_patterns():
    return [
        Pattern.of(["L1", 0.10, 1, 0.2, [1.0, 2.0]]),
        Pattern.of(["L1", 0.15, 23, None, [1.0, 2.5]]),
        Pattern.of(["L2", 0.80, 12, 0.9, []]),
        Pattern.of(["L3", 0.50, 6, None, [4.0]]),
    ]


@pytest.fixture
def tiny_ga():
    return GaConfig(population=8, elite_count=2, max_generations=6, stall_generations=3, replicates=3, n_jobs=1)


@pytest.fixture
def separated_matrix():
    """Three tight groups of two points on a line, far apart."""
    points = np.array([0.0, 0.01, 5.0, 5.01, 10.0, 10.01])
    return np.abs(points[:, None] - points[None, :])
