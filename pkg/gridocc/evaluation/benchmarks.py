"""
Benchmark dataset registry and published reference AUC values.
"""
import csv
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from sklearn.datasets import load_breast_cancer, load_iris

from ..core.errors import DataFormatError
from ..dissimilarity.space import Pattern
from ..preprocessing.datasets import LabeledSet
from ..preprocessing.normalization import standardize
from ..schemas.features import FeatureDescriptor, FeatureKind, FeatureSchema, Scaling

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BenchmarkInfo:
    name: str
    acronym: str
    target_class: str
    n_target: int
    n_nontarget: int
    n_features: int
    filename: Optional[str] = None


BENCHMARKS: Dict[str, BenchmarkInfo] = {
    "biomed": BenchmarkInfo("Biomed", "BI", "normal", 127, 67, 5, "biomed.csv"),
    "breast_cancer": BenchmarkInfo("Breast Wisconsin", "BW", "benign", 458, 241, 9),
    "diabetes": BenchmarkInfo("Diabetes (Pima indians)", "D", "present", 500, 268, 8, "diabetes.csv"),
    "ecoli": BenchmarkInfo("Ecoli", "E", "pp", 52, 284, 7, "ecoli.csv"),
    "iris": BenchmarkInfo("Iris", "I", "Iris-setosa", 50, 100, 4),
    "liver": BenchmarkInfo("Liver", "L", "healthy", 200, 145, 6, "liver.csv"),
}

# Published test AUC, mean and standard deviation, per classifier and dataset acronym
REFERENCE_AUC: Dict[str, Dict[str, Optional[Tuple[float, float]]]] = {
    "published": {"BI": (0.904, 0.013), "BW": (0.996, 0.002), "D": (0.756, 0.003), "E": (0.949, 0.008), "I": (1.000, 0.000), "L": (0.652, 0.011)},
    "EOCC-1": {"BI": (0.867, 0.005), "BW": (0.853, 0.020), "D": (0.670, 0.024), "E": (0.928, 0.011), "I": (1.000, 0.000), "L": (0.396, 0.016)},
    "EOCC-2": {"BI": (0.878, 0.006), "BW": (0.995, 0.001), "D": (0.751, 0.012), "E": (0.957, 0.004), "I": (1.000, 0.000), "L": (0.460, 0.026)},
    "EOCC-2_10%": {"BI": (0.862, 0.016), "BW": (0.995, 0.002), "D": (0.709, 0.023), "E": (0.954, 0.007), "I": (1.000, 0.000), "L": (0.452, 0.026)},
    "Gauss": {"BI": (0.899, 0.005), "BW": (0.985, 0.001), "D": (0.721, 0.003), "E": (0.929, 0.003), "I": (1.000, 0.000), "L": (0.509, 0.005)},
    "MoG": {"BI": (0.911, 0.008), "BW": (0.984, 0.002), "D": (0.738, 0.003), "E": (0.929, 0.003), "I": (1.000, 0.000), "L": (0.494, 0.006)},
    "Naive Parzen": {"BI": (0.931, 0.002), "BW": (0.987, 0.001), "D": (0.678, 0.003), "E": (0.930, 0.008), "I": (1.000, 0.000), "L": (0.484, 0.008)},
    "Parzen": {"BI": (0.915, 0.009), "BW": (0.991, 0.001), "D": (0.756, 0.002), "E": (0.929, 0.005), "I": (1.000, 0.000), "L": (0.469, 0.008)},
    "k-Means": {"BI": (0.902, 0.009), "BW": (0.984, 0.001), "D": (0.712, 0.010), "E": (0.878, 0.015), "I": (1.000, 0.000), "L": (0.469, 0.014)},
    "1-NN": {"BI": (0.914, 0.012), "BW": (0.991, 0.001), "D": (0.721, 0.002), "E": (0.906, 0.008), "I": (1.000, 0.000), "L": (0.511, 0.007)},
    "k-NN": {"BI": (0.914, 0.012), "BW": (0.991, 0.001), "D": (0.721, 0.002), "E": (0.906, 0.008), "I": (1.000, 0.000), "L": (0.511, 0.007)},
    "Auto-encoder": {"BI": (0.890, 0.013), "BW": (0.960, 0.002), "D": (0.658, 0.005), "E": (0.888, 0.023), "I": (1.000, 0.000), "L": (0.608, 0.008)},
    "PCA": {"BI": (0.776, 0.031), "BW": (0.920, 0.004), "D": (0.640, 0.006), "E": (0.655, 0.013), "I": (0.920, 0.008), "L": (0.608, 0.008)},
    "SOM": {"BI": (0.908, 0.006), "BW": (0.990, 0.002), "D": (0.709, 0.009), "E": (0.898, 0.004), "I": (1.000, 0.000), "L": (0.487, 0.017)},
    "MST_CD": {"BI": (0.914, 0.012), "BW": (0.992, 0.001), "D": (0.715, 0.003), "E": (0.899, 0.009), "I": (1.000, 0.000), "L": None},
    "k-Centres": {"BI": (0.906, 0.015), "BW": (0.984, 0.002), "D": (0.678, 0.009), "E": (0.870, 0.023), "I": (1.000, 0.000), "L": (0.483, 0.006)},
    "SVDD": {"BI": (0.915, 0.009), "BW": (0.988, 0.001), "D": (0.732, 0.005), "E": (0.922, 0.010), "I": (1.000, 0.000), "L": (0.490, 0.010)},
    "MPM": {"BI": (0.909, 0.010), "BW": (0.991, 0.001), "D": (0.729, 0.003), "E": (0.922, 0.007), "I": (1.000, 0.000), "L": (0.521, 0.011)},
    "LPDD": {"BI": (0.889, 0.008), "BW": (0.989, 0.001), "D": (0.634, 0.005), "E": (0.947, 0.004), "I": (1.000, 0.000), "L": (0.506, 0.005)},
}


def reference_auc(acronym: str, system: str = "published") -> Optional[Tuple[float, float]]:
    return REFERENCE_AUC.get(system, {}).get(acronym)


def best_reference(acronym: str) -> Tuple[str, float]:
    """Classifier with the highest published mean AUC on a dataset."""
    scored = [(name, row[acronym][0]) for name, row in REFERENCE_AUC.items() if row.get(acronym)]
    return max(scored, key=lambda item: item[1])


def _bundled(loader: Callable, target_index: int) -> Tuple[np.ndarray, np.ndarray]:
    data = loader()
    return np.asarray(data.data, dtype=np.float64), (np.asarray(data.target) == target_index).astype(np.int64)


def read_benchmark_csv(path: Path, target_class: str) -> Tuple[np.ndarray, np.ndarray]:
    """
    Comma-separated file, numeric features followed by the class label.

    Rows whose feature fields are not numeric (e.g. a header) are skipped.
    """
    features, labels = [], []
    with open(path, "r", encoding="utf-8", newline="") as handle:
        for i, row in enumerate(csv.reader(handle)):
            if not row:
                continue
            try:
                values = [float(v) for v in row[:-1]]
            except ValueError:
                if i == 0:
                    continue
                raise DataFormatError(f"{path}: non-numeric feature", row=i)
            features.append(values)
            labels.append(1 if row[-1].strip() == target_class else 0)
    if not features:
        raise DataFormatError(f"{path}: no data rows")
    return np.asarray(features, dtype=np.float64), np.asarray(labels, dtype=np.int64)


def load_benchmark(name: str, data_dir: Optional[str] = None) -> Tuple[FeatureSchema, LabeledSet, LabeledSet]:
    """
    Standardized targets and non-targets of a benchmark dataset.

    Iris and Breast Wisconsin ship with scikit-learn; the others are read
    from <data_dir>/<name>.csv.
    """
    if name not in BENCHMARKS:
        raise DataFormatError(f"unknown benchmark '{name}' (known: {', '.join(sorted(BENCHMARKS))})")
    info = BENCHMARKS[name]
    if name == "iris":
        X, y = _bundled(load_iris, 0)
    elif name == "breast_cancer":
        X, y = _bundled(load_breast_cancer, 1)
    else:
        if data_dir is None:
            raise DataFormatError(f"benchmark '{name}' needs experiment.data_dir")
        X, y = read_benchmark_csv(Path(data_dir) / info.filename, info.target_class)

    columns = [standardize(X[:, j]) for j in range(X.shape[1])]
    X = np.asarray(columns).T
    schema = FeatureSchema(features=[
        FeatureDescriptor(name=f"f{j}", kind=FeatureKind.QUANTITATIVE, scaling=Scaling.NONE)
        for j in range(X.shape[1])
    ])
    patterns = [Pattern(values=tuple(float(v) for v in row)) for row in X]
    targets = LabeledSet.of_targets([p for p, label in zip(patterns, y) if label == 1])
    nontargets = LabeledSet.of_nontargets([p for p, label in zip(patterns, y) if label == 0])
    logger.info(f"Loaded benchmark {info.name}: {len(targets)} targets, {len(nontargets)} non-targets, {X.shape[1]} features")
    return schema, targets, nontargets
