"""
Heterogeneous fault-record surrogate: raw records, feature engineering and the fault schema.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..schemas.features import FeatureDescriptor, FeatureKind, FeatureSchema, Scaling
from ..schemas.stats import BoundingBox, NormalizationStats
from ..utils.geo_utils import GeoPoint, apply_bounding_box, fit_bounding_box, geodesic_distance, midpoint
from .current import backbone_current_feature
from .datasets import LabeledSet, SplitSets
from .normalization import apply_stats, fit_stats
from .synthetic import generate_uniform_nontargets

logger = logging.getLogger(__name__)

DAY_PERIOD = 364
MINUTE_PERIOD = 1439
SAMPLES_PER_DAY = 144
EVENT_WINDOW_SECONDS = 90 * 86400.0


@dataclass
class FaultRecord:
    """One raw localized-fault record before feature engineering."""

    day: int
    minute: int
    location: str
    material: str
    primary_station: GeoPoint
    secondary_a: GeoPoint
    secondary_b: GeoPoint
    out_of_service: float
    current_out_of_bounds: float
    max_temperature: float
    min_temperature: float
    rain: float
    cable_section: Optional[float]
    current_samples: List[float] = field(default_factory=list)
    breaker_events: List[float] = field(default_factory=list)
    petersen_alarms: List[float] = field(default_factory=list)
    saving_interventions: List[float] = field(default_factory=list)


def fault_schema() -> FeatureSchema:
    """Schema of engineered fault patterns (all five feature kinds)."""
    q = FeatureKind.QUANTITATIVE
    return FeatureSchema(features=[
        FeatureDescriptor(name="day_start", kind=FeatureKind.CIRCULAR, period=DAY_PERIOD),
        FeatureDescriptor(name="time_start", kind=FeatureKind.CIRCULAR, period=MINUTE_PERIOD),
        FeatureDescriptor(name="location_element", kind=FeatureKind.CATEGORICAL, domain=["aerial", "underground"]),
        FeatureDescriptor(name="material", kind=FeatureKind.CATEGORICAL, domain=["CU", "AL"]),
        FeatureDescriptor(name="ps_fault_distance", kind=q),
        FeatureDescriptor(name="fault_x", kind=q, scaling=Scaling.NONE),
        FeatureDescriptor(name="fault_y", kind=q, scaling=Scaling.NONE),
        FeatureDescriptor(name="secondary_stations", kind=q),
        FeatureDescriptor(name="current_out_of_bounds", kind=q),
        FeatureDescriptor(name="max_temperature", kind=q),
        FeatureDescriptor(name="min_temperature", kind=q),
        FeatureDescriptor(name="delta_temperature", kind=q),
        FeatureDescriptor(name="rain", kind=q),
        FeatureDescriptor(name="cable_section", kind=FeatureKind.SPECIAL),
        FeatureDescriptor(name="backbone_current", kind=FeatureKind.SPECIAL),
        FeatureDescriptor(name="breaker_interruptions", kind=FeatureKind.TIMESERIES),
        FeatureDescriptor(name="petersen_alarms", kind=FeatureKind.TIMESERIES),
        FeatureDescriptor(name="saving_interventions", kind=FeatureKind.TIMESERIES),
    ])


# Typical fault scenarios around Rome used to draw well-separated target clusters
FAULT_SCENARIOS: List[Dict] = [
    {
        "name": "summer_overload",
        "day": 200, "minute": 900,
        "location": "underground", "material": "AL",
        "primary_station": (41.90, 12.45), "offset_km": 4.0,
        "out_of_service": 12, "current_out_of_bounds": 8,
        "temperature": (36.0, 22.0), "rain": 0.0,
        "cable_section": 0.3, "current_shift": 60.0,
        "events": {"breaker": 6, "petersen": 1, "saving": 0},
    },
    {
        "name": "winter_storm",
        "day": 20, "minute": 300,
        "location": "aerial", "material": "CU",
        "primary_station": (41.82, 12.55), "offset_km": 9.0,
        "out_of_service": 3, "current_out_of_bounds": 1,
        "temperature": (8.0, 1.0), "rain": 14.0,
        "cable_section": None, "current_shift": 5.0,
        "events": {"breaker": 1, "petersen": 7, "saving": 3},
    },
    {
        "name": "joint_ageing",
        "day": 110, "minute": 600,
        "location": "underground", "material": "CU",
        "primary_station": (41.96, 12.50), "offset_km": 2.0,
        "out_of_service": 25, "current_out_of_bounds": 3,
        "temperature": (21.0, 11.0), "rain": 2.0,
        "cable_section": 0.8, "current_shift": 25.0,
        "events": {"breaker": 0, "petersen": 3, "saving": 8},
    },
]


def _jitter_point(rng: np.random.Generator, center: Tuple[float, float], km: float) -> GeoPoint:
    # ~111 km per degree of latitude; good enough for drawing synthetic stations
    bearing = rng.uniform(0, 2 * np.pi)
    radius = abs(rng.normal(km, 0.1 * km)) / 111.0
    return GeoPoint(lat=center[0] + radius * np.sin(bearing), lon=center[1] + radius * np.cos(bearing) / np.cos(np.radians(center[0])))


def _events(rng: np.random.Generator, mean_count: int) -> List[float]:
    count = int(rng.poisson(mean_count)) if mean_count else 0
    # seconds before the fault within a three-month window
    return sorted(float(t) for t in rng.uniform(0, EVENT_WINDOW_SECONDS, size=count))


def generate_fault_records(n: int, seed: int, scenarios: Optional[List[Dict]] = None) -> List[FaultRecord]:
    """Draw n raw fault records spread round-robin over the scenarios."""
    scenarios = scenarios or FAULT_SCENARIOS
    rng = np.random.default_rng(seed)
    records = []
    for i in range(n):
        s = scenarios[i % len(scenarios)]
        ps = GeoPoint(*s["primary_station"])
        ss_a = _jitter_point(rng, s["primary_station"], s["offset_km"])
        ss_b = GeoPoint(lat=ss_a.lat + rng.normal(0, 0.002), lon=ss_a.lon + rng.normal(0, 0.002))
        t_max = s["temperature"][0] + rng.normal(0, 1.0)
        t_min = min(t_max, s["temperature"][1] + rng.normal(0, 1.0))
        base = 200.0 + rng.normal(0, 5.0)
        shift = s["current_shift"] + rng.normal(0, 2.0)
        samples = np.concatenate([
            base + rng.normal(0, 1.0, SAMPLES_PER_DAY // 2),
            base + shift + rng.normal(0, 1.0, SAMPLES_PER_DAY // 2),
        ])
        section = s["cable_section"]
        records.append(FaultRecord(
            day=int(np.clip(round(s["day"] + rng.normal(0, 6)), 0, DAY_PERIOD)),
            minute=int(np.clip(round(s["minute"] + rng.normal(0, 40)), 0, MINUTE_PERIOD)),
            location=s["location"],
            material=s["material"],
            primary_station=ps,
            secondary_a=ss_a,
            secondary_b=ss_b,
            out_of_service=float(max(0, round(s["out_of_service"] + rng.normal(0, 2)))),
            current_out_of_bounds=float(max(0, round(s["current_out_of_bounds"] + rng.normal(0, 1)))),
            max_temperature=float(t_max),
            min_temperature=float(t_min),
            rain=float(max(0.0, s["rain"] + rng.normal(0, 1.0))),
            cable_section=None if section is None else float(np.clip(section + rng.normal(0, 0.03), 0.0, 1.0)),
            current_samples=[float(v) for v in samples],
            breaker_events=_events(rng, s["events"]["breaker"]),
            petersen_alarms=_events(rng, s["events"]["petersen"]),
            saving_interventions=_events(rng, s["events"]["saving"]),
        ))
    logger.info(f"Generated {n} fault records over {len(scenarios)} scenarios (seed {seed})")
    return records


def engineer_fault_features(
    records: List[FaultRecord],
    box: Optional[BoundingBox] = None,
) -> Tuple[List[list], BoundingBox]:
    """
    Turn raw records into rows of the fault schema.

    The fault position is the midpoint of the two secondary stations; its
    geodesic distance from the primary station and its bounding-box
    coordinates become features. The bounding box covers every station and is
    fitted here unless supplied.
    """
    if box is None:
        stations = [pt for r in records for pt in (r.primary_station, r.secondary_a, r.secondary_b)]
        box = fit_bounding_box(stations)
    faults = [midpoint(r.secondary_a, r.secondary_b) for r in records]
    positions = apply_bounding_box(faults, box)
    rows = []
    for record, fault, (fx, fy) in zip(records, faults, positions):
        rows.append([
            record.day,
            record.minute,
            record.location,
            record.material,
            geodesic_distance(record.primary_station, fault),
            fx,
            fy,
            record.out_of_service,
            record.current_out_of_bounds,
            record.max_temperature,
            record.min_temperature,
            record.max_temperature - record.min_temperature,
            record.rain,
            record.cable_section,
            backbone_current_feature(record.current_samples),
            list(record.breaker_events),
            list(record.petersen_alarms),
            list(record.saving_interventions),
        ])
    return rows, box


def make_fault_problem(
    n_train: int,
    n_validation: int,
    n_test: int,
    ratio: float,
    seed: int,
) -> Tuple[FeatureSchema, NormalizationStats, SplitSets]:
    """
    Build a heterogeneous one-class problem.

    Normalization is fitted on the training targets; uniform non-targets are
    drawn from that profile so that n_train / non-targets per split = ratio.
    """
    schema = fault_schema()
    root = np.random.SeedSequence(seed)
    s_tr, s_vs, s_ts, s_nv, s_nt = (int(s.generate_state(1)[0]) for s in root.spawn(5))
    train_rows, box = engineer_fault_features(generate_fault_records(n_train, s_tr))
    stats = fit_stats(schema, train_rows)
    stats.bounding_box = box

    def targets(n: int, s: int) -> LabeledSet:
        rows, _ = engineer_fault_features(generate_fault_records(n, s), box)
        return LabeledSet.of_targets(apply_stats(schema, rows, stats))

    n_nontarget = int(round(n_train / ratio)) if ratio > 0 else 0
    train = LabeledSet.of_targets(apply_stats(schema, train_rows, stats))
    validation = targets(n_validation, s_vs).concat(
        LabeledSet.of_nontargets(generate_uniform_nontargets(schema, stats, n_nontarget, s_nv)))
    test = targets(n_test, s_ts).concat(
        LabeledSet.of_nontargets(generate_uniform_nontargets(schema, stats, n_nontarget, s_nt)))
    return schema, stats, SplitSets(train=train, validation=validation, test=test)
