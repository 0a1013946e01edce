import numpy as np
import pytest

from gridocc.core.errors import DataFormatError, EvaluationError
from gridocc.evaluation import (
    ConfusionCounts,
    best_reference,
    confusion_metrics,
    embed_dissimilarity,
    load_benchmark,
    mutual_information,
    pearson_correlation,
    reference_auc,
    roc_auc,
    weight_density,
    weight_entropy,
)
from gridocc.evaluation.benchmarks import read_benchmark_csv


def _pair_counting_auc(scores, labels):
    pos = [s for s, y in zip(scores, labels) if y == 1]
    neg = [s for s, y in zip(scores, labels) if y == 0]
    wins = sum(1.0 if p > n else 0.5 if p == n else 0.0 for p in pos for n in neg)
    return wins / (len(pos) * len(neg))


# Confusion metrics

def test_confusion_metrics_values():
    metrics = confusion_metrics(ConfusionCounts(tp=8, fp=2, tn=18, fn=2))
    assert metrics.fpr == pytest.approx(0.1)
    assert metrics.recall == pytest.approx(0.8)
    assert metrics.precision == pytest.approx(0.8)
    assert metrics.accuracy == pytest.approx(26 / 30)
    assert metrics.flags == []


def test_confusion_metrics_flags_zero_over_zero():
    metrics = confusion_metrics(ConfusionCounts(tp=0, fp=0, tn=5, fn=0))
    assert metrics.recall == 0.0 and metrics.precision == 0.0
    assert set(metrics.flags) == {"recall:0/0", "precision:0/0"}
    assert metrics.accuracy == 1.0


def test_confusion_metrics_empty():
    with pytest.raises(EvaluationError):
        confusion_metrics(ConfusionCounts(0, 0, 0, 0))


def test_confusion_counts_from_labels():
    counts = ConfusionCounts.from_labels([1, 1, 0, 0, 1], [1, 0, 0, 1, 1])
    assert counts == ConfusionCounts(tp=2, fp=1, tn=1, fn=1)


# ROC

def test_auc_matches_pair_counting():
    rng = np.random.default_rng(0)
    for _ in range(500):
        n = int(rng.integers(2, 15))
        labels = rng.integers(0, 2, size=n)
        labels[0], labels[1] = 1, 0
        scores = rng.integers(0, 5, size=n) / 4.0
        assert roc_auc(scores, labels).auc == pytest.approx(_pair_counting_auc(scores, labels))


def test_auc_extremes():
    assert roc_auc([0.9, 0.8, 0.1], [1, 1, 0]).auc == 1.0
    assert roc_auc([0.5, 0.5, 0.5, 0.5], [1, 0, 1, 0]).auc == pytest.approx(0.5)
    curve = roc_auc([0.9, 0.1], [1, 0])
    assert curve.fpr[0] == 0.0 and curve.tpr[-1] == 1.0


def test_auc_needs_both_classes():
    with pytest.raises(EvaluationError):
        roc_auc([0.1, 0.2], [1, 1])
    with pytest.raises(EvaluationError):
        roc_auc([0.1, 0.2], [1])


def test_pearson_correlation():
    assert pearson_correlation([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert pearson_correlation([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
    with pytest.raises(EvaluationError):
        pearson_correlation([1, 1, 1], [1, 2, 3])
    with pytest.raises(EvaluationError):
        pearson_correlation([1], [1])


# Information measures

def test_weight_entropy():
    assert weight_entropy([0.05, 0.15, 0.95]) == pytest.approx(np.log(3))
    assert weight_entropy([0.05] * 8) == 0.0
    spread = [0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95]
    assert weight_entropy(spread) == pytest.approx(np.log(10))


def test_weight_density_integrates_to_about_one():
    grid, density = weight_density([0.2, 0.3, 0.35, 0.8])
    assert grid[0] == 0.0 and grid[-1] == 1.0
    assert np.all(density >= 0.0)
    assert np.trapz(density, grid) == pytest.approx(1.0, abs=0.15)


def test_weight_density_constant_weights():
    grid, density = weight_density([0.5, 0.5])
    assert density[int(np.argmax(density))] == 1.0
    assert grid[int(np.argmax(density))] == pytest.approx(0.5)


def test_mutual_information_range():
    rng = np.random.default_rng(3)
    x = rng.random(200)
    assert mutual_information(x, x) == pytest.approx(1.0)
    independent = mutual_information(x, rng.random(200))
    assert 0.0 <= independent < 0.5
    assert mutual_information(x, np.ones(200)) == 0.0


def test_mutual_information_short_series():
    with pytest.raises(EvaluationError):
        mutual_information([0.1] * 5, [0.2] * 5)


# Embedding

def test_embedding_shape_and_sign():
    points = np.array([0.0, 1.0, 2.0, 10.0])
    D = np.abs(points[:, None] - points[None, :])
    coords = embed_dissimilarity(D)
    assert coords.shape == (4, 2)
    assert np.allclose(embed_dissimilarity(D), coords)
    # the isolated point sits alone at one end of the first axis
    order = np.argsort(coords[:, 0])
    assert order[0] == 3 or order[-1] == 3


def test_embedding_degenerate():
    assert np.all(embed_dissimilarity(np.zeros((3, 3))) == 0.0)
    with pytest.raises(EvaluationError):
        embed_dissimilarity(np.zeros((2, 3)))


# Benchmarks

def test_reference_values():
    assert reference_auc("I") == (1.0, 0.0)
    assert reference_auc("L", "MST_CD") is None
    assert best_reference("BI") == ("Naive Parzen", 0.931)


def test_iris_is_bundled():
    schema, targets, nontargets = load_benchmark("iris")
    assert schema.arity == 4
    assert len(targets) == 50 and len(nontargets) == 100


def test_unknown_benchmark_and_missing_dir():
    with pytest.raises(DataFormatError):
        load_benchmark("glass")
    with pytest.raises(DataFormatError):
        load_benchmark("liver")


def test_read_benchmark_csv(tmp_path):
    path = tmp_path / "liver.csv"
    path.write_text("a,b,class\n1,2,healthy\n3,4,sick\n", encoding="utf-8")
    X, y = read_benchmark_csv(path, "healthy")
    assert X.tolist() == [[1.0, 2.0], [3.0, 4.0]]
    assert y.tolist() == [1, 0]
