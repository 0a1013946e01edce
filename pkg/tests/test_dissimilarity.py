import itertools
import math

import numpy as np
import pytest

from gridocc.core.errors import DomainError, SchemaError
from gridocc.dissimilarity import (
    FeatureSpace,
    Pattern,
    TsNormalizer,
    circular_diff,
    composite_dissimilarity,
    dissimilarity_matrix,
    dtw,
    fit_ts_normalizer,
    simple_matching,
    special_diff,
)
from gridocc.dissimilarity.dtw import pairwise_dtw
from gridocc.schemas.features import FeatureDescriptor, FeatureKind, FeatureSchema, Scaling


# Kernels

def test_simple_matching_counts_mismatches():
    assert simple_matching(["a", "b", "c"], ["a", "x", "c"]) == pytest.approx(1 / 3)
    assert simple_matching(["a"], ["a"]) == 0.0


def test_simple_matching_arity_mismatch():
    with pytest.raises(SchemaError):
        simple_matching(["a", "b"], ["a"])


@pytest.mark.parametrize("x, y, a, expected", [
    (1, 23, 24, 2.0),
    (0, 12, 24, 12.0),
    (5, 5, 24, 0.0),
    (0, 364, 364, 0.0),
])
def test_circular_diff(x, y, a, expected):
    assert circular_diff(x, y, a) == expected


def test_circular_diff_out_of_domain():
    with pytest.raises(DomainError):
        circular_diff(25, 0, 24)


def test_special_diff_not_applicable_semantics():
    assert special_diff(None, None) == 0.0
    assert special_diff(None, 0.3) == 1.0
    assert special_diff(0.7, None) == 1.0
    assert special_diff(0.2, 0.5) == pytest.approx(0.3)


def test_special_diff_rejects_unnormalized():
    with pytest.raises(DomainError):
        special_diff(1.5, 0.2)


# DTW

def _brute_force_dtw(x, y):
    """Minimum cost over every monotone, continuous alignment path."""
    n, m = len(x), len(y)
    best = math.inf

    def walk(i, j, cost):
        nonlocal best
        cost += abs(x[i] - y[j])
        if cost >= best:
            return
        if i == n - 1 and j == m - 1:
            best = cost
            return
        if i + 1 < n:
            walk(i + 1, j, cost)
        if j + 1 < m:
            walk(i, j + 1, cost)
        if i + 1 < n and j + 1 < m:
            walk(i + 1, j + 1, cost)

    walk(0, 0, 0.0)
    return best


def test_dtw_matches_brute_force_alignment():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        x = list(rng.integers(0, 10, size=int(rng.integers(1, 6))).astype(float))
        y = list(rng.integers(0, 10, size=int(rng.integers(1, 6))).astype(float))
        assert dtw(x, y) == pytest.approx(_brute_force_dtw(x, y))


def test_dtw_examples():
    assert dtw([1, 2, 3], [1, 2, 3]) == 0.0
    assert dtw([0, 0], [1]) == pytest.approx(2.0)
    assert dtw([], []) == 0.0
    assert math.isinf(dtw([], [1.0]))


def test_dtw_symmetric():
    assert dtw([1, 4, 2], [3, 3]) == pytest.approx(dtw([3, 3], [1, 4, 2]))


def test_pairwise_dtw_agrees_with_scalar():
    sequences = [(1.0, 2.0), (), (3.0,), (0.0, 5.0, 1.0)]
    raw = pairwise_dtw(sequences)
    for i, j in itertools.product(range(4), repeat=2):
        expected = dtw(sequences[i], sequences[j])
        if math.isinf(expected):
            assert math.isinf(raw[i, j])
        else:
            assert raw[i, j] == pytest.approx(expected)


def test_normalizer_maps_infinite_to_one():
    norm = TsNormalizer(maxima={"alarms": 4.0})
    assert norm.normalize("alarms", 2.0) == pytest.approx(0.5)
    assert norm.normalize("alarms", float("inf")) == 1.0
    assert norm.normalize("alarms", 10.0) == 1.0


def test_normalizer_dtw_is_finite_for_empty_sequences():
    norm = TsNormalizer(maxima={"alarms": 4.0})
    assert norm.dtw("alarms", [], [1.0, 2.0]) == 4.0
    assert norm.dtw("alarms", [], []) == 0.0
    assert norm.dtw("alarms", [1.0], [3.0]) == pytest.approx(2.0)
    assert norm.normalize("alarms", norm.dtw("alarms", [2.0], [])) == 1.0
    raw = norm.pairwise("alarms", [(1.0,), (), (5.0, 6.0)])
    assert np.all(np.isfinite(raw))
    assert raw[0, 1] == raw[1, 0] == 4.0
    assert raw[0, 2] == pytest.approx(dtw([1.0], [5.0, 6.0]))


def test_fit_ts_normalizer_uses_finite_maximum(mixed_schema, mixed_patterns):
    norm = fit_ts_normalizer(mixed_schema, mixed_patterns)
    sequences = [p.values[4] for p in mixed_patterns]
    finite = [dtw(a, b) for a, b in itertools.combinations(sequences, 2) if not math.isinf(dtw(a, b))]
    assert norm.maxima["alarms"] == pytest.approx(max(finite))


def test_fit_ts_normalizer_sentinel_for_single_pattern(mixed_schema, mixed_patterns):
    assert fit_ts_normalizer(mixed_schema, mixed_patterns[:1]).maxima["alarms"] == 1.0


# Composite

@pytest.fixture
def numeric_schema():
    return FeatureSchema(features=[
        FeatureDescriptor(name="x", kind=FeatureKind.QUANTITATIVE, scaling=Scaling.NONE),
        FeatureDescriptor(name="y", kind=FeatureKind.QUANTITATIVE, scaling=Scaling.NONE),
    ])


def test_composite_is_weighted_euclidean(numeric_schema):
    x = Pattern.of([0.0, 0.0])
    y = Pattern.of([0.3, 0.4])
    assert composite_dissimilarity(x, y, [1, 1], TsNormalizer(), numeric_schema) == pytest.approx(0.5)
    assert composite_dissimilarity(x, y, [1, 0], TsNormalizer(), numeric_schema) == pytest.approx(0.3)
    assert composite_dissimilarity(x, y, [0, 0], TsNormalizer(), numeric_schema) == 0.0


def test_composite_rejects_bad_weights(numeric_schema):
    x = Pattern.of([0.0, 0.0])
    with pytest.raises(SchemaError):
        composite_dissimilarity(x, x, [1.0], TsNormalizer(), numeric_schema)
    with pytest.raises(DomainError):
        composite_dissimilarity(x, x, [1.2, 0.0], TsNormalizer(), numeric_schema)


def test_composite_rejects_pattern_of_wrong_arity(numeric_schema):
    with pytest.raises(SchemaError):
        composite_dissimilarity(Pattern.of([0.0]), Pattern.of([0.0, 0.0]), [1, 1], TsNormalizer(), numeric_schema)


def test_composite_over_mixed_kinds(mixed_schema, mixed_patterns):
    norm = TsNormalizer(maxima={"alarms": 2.0})
    x, y = mixed_patterns[0], mixed_patterns[1]
    # phase equal, load 0.05, hour 2 of 24 -> 2/12, section one NA -> 1, alarms dtw 0.5 / 2
    expected = math.sqrt(0.05 ** 2 + (2 / 12) ** 2 + 1.0 + 0.25 ** 2)
    assert composite_dissimilarity(x, y, np.ones(5), norm, mixed_schema) == pytest.approx(expected)


def test_component_tensor_matches_scalar_composite(mixed_schema, mixed_patterns):
    norm = fit_ts_normalizer(mixed_schema, mixed_patterns)
    w = np.array([0.3, 1.0, 0.5, 0.2, 0.9])
    D = dissimilarity_matrix(mixed_patterns, w, norm, mixed_schema)
    for i, j in itertools.product(range(len(mixed_patterns)), repeat=2):
        expected = composite_dissimilarity(mixed_patterns[i], mixed_patterns[j], w, norm, mixed_schema)
        assert D[i, j] == pytest.approx(expected)


def test_dissimilarity_matrix_properties(mixed_schema, mixed_patterns):
    norm = fit_ts_normalizer(mixed_schema, mixed_patterns)
    D = dissimilarity_matrix(mixed_patterns, np.ones(5), norm, mixed_schema)
    assert D.shape == (4, 4)
    assert np.allclose(D, D.T)
    assert np.all(np.diag(D) == 0.0)
    assert np.all(D >= 0.0)
    # every component lies in [0, 1], so d <= sqrt(sum w)
    assert np.all(D <= math.sqrt(5) + 1e-12)


def test_dissimilarity_matrix_empty(mixed_schema):
    with pytest.raises(SchemaError):
        dissimilarity_matrix([], np.ones(5), TsNormalizer(), mixed_schema)


def test_feature_space_rectangular_tensor(mixed_schema, mixed_patterns):
    space = FeatureSpace(mixed_schema, fit_ts_normalizer(mixed_schema, mixed_patterns))
    tensor = space.pairwise(mixed_patterns[:2], mixed_patterns)
    assert tensor.shape == (2, 4, 5)
    assert np.all((tensor >= 0.0) & (tensor <= 1.0))
