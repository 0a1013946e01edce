import numpy as np
import pytest

from gridocc.core.errors import SchemaError, StatsError
from gridocc.preprocessing import (
    SyntheticSpec,
    affine_normalize,
    apply_stats,
    backbone_current_feature,
    engineer_fault_features,
    fault_schema,
    fit_stats,
    generate_fault_records,
    generate_gaussian_clusters,
    generate_uniform_nontargets,
    make_fault_problem,
    normalized_schema,
    split_problem,
    standardize,
)
from gridocc.preprocessing.datasets import LabeledSet
from gridocc.preprocessing.synthetic import plane_schema
from gridocc.dissimilarity.space import Pattern
from gridocc.schemas.features import FeatureDescriptor, FeatureKind, FeatureSchema, Scaling
from gridocc.utils.geo_utils import GeoPoint, geodesic_distance, great_circle_distance, midpoint, normalize_spatial


@pytest.mark.parametrize("c, m, M, expected", [
    (5, 0, 10, 0.5),
    (0, 0, 10, 0.0),
    (10, 0, 10, 1.0),
    (15, 0, 10, 1.0),
    (-3, 0, 10, 0.0),
    (4, 4, 4, 0.0),
])
def test_affine_normalize(c, m, M, expected):
    assert affine_normalize(c, m, M) == pytest.approx(expected)


def test_affine_normalize_without_clamp():
    assert affine_normalize(15, 0, 10, clamp=False) == pytest.approx(1.5)


def test_affine_normalize_inverted_range():
    with pytest.raises(StatsError):
        affine_normalize(1, 5, 2)


def test_standardize_zero_mean_unit_variance():
    values = standardize([1.0, 2.0, 3.0, 4.0])
    assert np.mean(values) == pytest.approx(0.0)
    assert np.std(values) == pytest.approx(1.0)
    assert standardize([3.0, 3.0]) == [0.0, 0.0]


def test_fit_and_apply_stats_are_reused_at_inference():
    schema = FeatureSchema(features=[
        FeatureDescriptor(name="load", kind=FeatureKind.QUANTITATIVE),
        FeatureDescriptor(name="section", kind=FeatureKind.SPECIAL),
        FeatureDescriptor(name="score", kind=FeatureKind.QUANTITATIVE, scaling=Scaling.STANDARD),
    ])
    rows = [[10.0, None, 1.0], [20.0, 4.0, 3.0], [30.0, 8.0, 5.0]]
    stats = fit_stats(schema, rows)
    assert stats.affine["load"].min == 10.0 and stats.affine["load"].max == 30.0
    assert stats.missing_rate["section"] == pytest.approx(1 / 3)
    patterns = apply_stats(schema, rows, stats)
    assert patterns[0].values[0] == 0.0
    assert patterns[2].values[0] == 1.0
    assert patterns[0].values[1] is None
    assert patterns[1].values[1] == pytest.approx(0.0)
    assert patterns[1].values[2] == pytest.approx(0.0)
    # a later, out-of-range row is clamped with the fitted range
    later = apply_stats(schema, [[40.0, 2.0, 3.0]], stats)[0]
    assert later.values[0] == 1.0


def test_apply_stats_rejects_wrong_kind():
    schema = FeatureSchema(features=[FeatureDescriptor(name="hour", kind=FeatureKind.CIRCULAR, period=24)])
    stats = fit_stats(schema, [[3]])
    with pytest.raises(SchemaError):
        apply_stats(schema, [["noon"]], stats)


def test_normalized_schema_keeps_kinds():
    schema = normalized_schema(fault_schema())
    assert all(d.scaling == Scaling.NONE for d in schema.features if d.is_numeric)
    assert [d.kind for d in schema.features] == [d.kind for d in fault_schema().features]


def test_backbone_current_feature():
    samples = [10.0] * 72 + [16.0] * 72
    assert backbone_current_feature(samples) == pytest.approx(6.0)
    assert backbone_current_feature([5.0] * 3) is None
    assert backbone_current_feature([]) is None


def test_backbone_current_uses_last_24_hours():
    samples = [100.0] * 50 + [10.0] * 72 + [16.0] * 72
    assert backbone_current_feature(samples) == pytest.approx(6.0)


def test_backbone_current_short_history_ends_at_last_sample():
    # 30 samples fall in the first half, the last 72 fill the second
    samples = [10.0] * 30 + [16.0] * 72
    assert backbone_current_feature(samples) == pytest.approx(6.0)
    assert backbone_current_feature([10.0] * 72) is None
    assert backbone_current_feature([4.0, 9.0] + [3.0] * 72) == pytest.approx(3.5)


# Geodesy

def test_vincenty_reference_distance():
    # Flinders Peak to Buninyong
    p = GeoPoint(lat=-37.95103341666667, lon=144.42486788888888)
    q = GeoPoint(lat=-37.65282113888889, lon=143.92649552777777)
    assert geodesic_distance(p, q) == pytest.approx(54972.271, abs=1e-3)


def test_vincenty_identical_points():
    p = GeoPoint(lat=41.9, lon=12.5)
    assert geodesic_distance(p, p) == 0.0


def test_vincenty_close_to_great_circle():
    p, q = GeoPoint(41.90, 12.45), GeoPoint(41.96, 12.50)
    assert geodesic_distance(p, q) == pytest.approx(great_circle_distance(p, q), rel=5e-3)


def test_midpoint_and_spatial_normalization():
    a, b = GeoPoint(41.0, 12.0), GeoPoint(42.0, 13.0)
    assert midpoint(a, b) == GeoPoint(41.5, 12.5)
    coords, box = normalize_spatial([a, b, midpoint(a, b)])
    assert coords == [(0.0, 0.0), (1.0, 1.0), (0.5, 0.5)]
    assert box.min_lat == 41.0 and box.max_lon == 13.0


# Synthetic data

def test_gaussian_clusters_sizes_and_labels():
    spec = SyntheticSpec(n_train=30, n_validation=30, n_test=30, n_nontarget=60, seed=3)
    problem = generate_gaussian_clusters(spec)
    assert len(problem.train) == 30 and problem.train.n_targets == 30
    assert len(problem.validation) == 90 and problem.validation.n_targets == 30
    assert len(problem.test) == 90
    for pattern in problem.test.patterns:
        plane_schema().validate_pattern(pattern.values)
        assert all(0.0 <= v <= 1.0 for v in pattern.values)


def test_gaussian_clusters_deterministic():
    spec = SyntheticSpec(n_train=12, seed=11)
    first = generate_gaussian_clusters(spec)
    second = generate_gaussian_clusters(spec)
    assert first.train.patterns == second.train.patterns
    assert first.test.patterns == second.test.patterns


def test_nontarget_margin_is_respected():
    spec = SyntheticSpec(n_train=3, n_nontarget=200, nontarget_margin=0.2, seed=1)
    centers = np.asarray(spec.centers)
    test = generate_gaussian_clusters(spec).test
    nontargets = [p for p, y in zip(test.patterns, test.labels) if y == 0]
    assert len(nontargets) == 200
    for pattern in nontargets:
        gaps = np.linalg.norm(centers - np.asarray(pattern.values), axis=1)
        assert gaps.min() > 0.2


def test_synthetic_spec_validation():
    with pytest.raises(ValueError):
        SyntheticSpec(centers=[(0.5, 0.5)], spreads=[0.1, 0.1])


def test_split_problem_thirds_and_halves():
    targets = LabeledSet.of_targets([Pattern.of([float(i), 0.0]) for i in range(9)])
    nontargets = LabeledSet.of_nontargets([Pattern.of([float(i), 1.0]) for i in range(10)])
    problem = split_problem(targets, nontargets, seed=0)
    assert len(problem.train) == 3 and problem.train.n_targets == 3
    assert problem.validation.n_targets == 3 and len(problem.validation) == 8
    assert problem.test.n_targets == 3 and len(problem.test) == 8
    every = problem.train.patterns + problem.validation.patterns + problem.test.patterns
    assert len(set(every)) == 19


# Fault surrogate

def test_fault_records_are_schema_rows():
    schema = fault_schema()
    records = generate_fault_records(12, seed=5)
    rows, box = engineer_fault_features(records)
    assert len(rows) == 12
    for i, row in enumerate(rows):
        schema.validate_pattern(row, row=i)
    # the winter storm scenario hits aerial lines: no cable section
    assert any(row[schema.index_of("cable_section")] is None for row in rows)
    assert box.min_lat <= box.max_lat


def test_fault_events_span_three_months():
    records = generate_fault_records(30, seed=4)
    events = [t for r in records for t in (*r.breaker_events, *r.petersen_alarms, *r.saving_interventions)]
    assert events
    assert min(events) >= 0.0
    assert max(events) <= 90 * 86400.0
    # with over a hundred events some land beyond the first month
    assert max(events) > 30 * 86400.0
    for r in records:
        assert list(r.breaker_events) == sorted(r.breaker_events)


def test_uniform_nontargets_follow_profile():
    schema = fault_schema()
    rows, _ = engineer_fault_features(generate_fault_records(30, seed=2))
    stats = fit_stats(schema, rows)
    nontargets = generate_uniform_nontargets(schema, stats, 50, seed=9)
    assert len(nontargets) == 50
    for pattern in nontargets:
        schema.validate_pattern(pattern.values)
    profile = stats.sequences["breaker_interruptions"]
    lengths = [len(p.values[schema.index_of("breaker_interruptions")]) for p in nontargets]
    assert min(lengths) >= profile.min_length and max(lengths) <= profile.max_length
    assert generate_uniform_nontargets(schema, stats, 0, seed=9) == []


def test_make_fault_problem_ratio():
    schema, stats, problem = make_fault_problem(15, 15, 15, ratio=0.15, seed=4)
    assert len(problem.train) == 15
    assert len(problem.test) - problem.test.n_targets == 100
    assert stats.bounding_box is not None
    assert schema.arity == 18
