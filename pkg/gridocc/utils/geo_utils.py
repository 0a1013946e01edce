"""
Geodesic helpers on the WGS84 ellipsoid and bounding-box normalization of positions.
"""
import logging
import math
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from ..schemas.stats import BoundingBox

logger = logging.getLogger(__name__)

# WGS84
WGS84_A = 6378137.0
WGS84_F = 1 / 298.257223563
WGS84_B = WGS84_A * (1 - WGS84_F)
MEAN_EARTH_RADIUS = 6371008.8

VINCENTY_TOLERANCE = 1e-12
VINCENTY_MAX_ITER = 200


class GeoPoint(NamedTuple):
    lat: float
    lon: float


def great_circle_distance(p: GeoPoint, q: GeoPoint) -> float:
    """Haversine distance in meters on the mean-radius sphere."""
    lat1, lon1, lat2, lon2 = map(math.radians, (p.lat, p.lon, q.lat, q.lon))
    h = math.sin((lat2 - lat1) / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2) ** 2
    return 2 * MEAN_EARTH_RADIUS * math.asin(min(1.0, math.sqrt(h)))


def geodesic_distance(p: GeoPoint, q: GeoPoint) -> float:
    """
    Inverse geodesic distance (Vincenty) between two WGS84 points.

    Args:
        p: First point, decimal degrees
        q: Second point, decimal degrees

    Returns:
        Distance in meters. Near-antipodal pairs where the iteration does not
        converge fall back to the great-circle distance with a warning.
    """
    if p == q:
        return 0.0
    U1 = math.atan((1 - WGS84_F) * math.tan(math.radians(p.lat)))
    U2 = math.atan((1 - WGS84_F) * math.tan(math.radians(q.lat)))
    L = math.radians(q.lon - p.lon)
    sinU1, cosU1 = math.sin(U1), math.cos(U1)
    sinU2, cosU2 = math.sin(U2), math.cos(U2)

    lam = L
    for _ in range(VINCENTY_MAX_ITER):
        sin_lam, cos_lam = math.sin(lam), math.cos(lam)
        sin_sigma = math.hypot(cosU2 * sin_lam, cosU1 * sinU2 - sinU1 * cosU2 * cos_lam)
        if sin_sigma == 0.0:
            return 0.0  # coincident points
        cos_sigma = sinU1 * sinU2 + cosU1 * cosU2 * cos_lam
        sigma = math.atan2(sin_sigma, cos_sigma)
        sin_alpha = cosU1 * cosU2 * sin_lam / sin_sigma
        cos2_alpha = 1 - sin_alpha ** 2
        # equatorial line: cos2_alpha = 0
        cos_2sigma_m = cos_sigma - 2 * sinU1 * sinU2 / cos2_alpha if cos2_alpha != 0.0 else 0.0
        C = WGS84_F / 16 * cos2_alpha * (4 + WGS84_F * (4 - 3 * cos2_alpha))
        lam_prev = lam
        lam = L + (1 - C) * WGS84_F * sin_alpha * (
            sigma + C * sin_sigma * (cos_2sigma_m + C * cos_sigma * (-1 + 2 * cos_2sigma_m ** 2))
        )
        if abs(lam - lam_prev) < VINCENTY_TOLERANCE:
            break
    else:
        logger.warning(f"Vincenty did not converge for {p} -> {q}; using great-circle approximation")
        return great_circle_distance(p, q)

    u2 = cos2_alpha * (WGS84_A ** 2 - WGS84_B ** 2) / WGS84_B ** 2
    A = 1 + u2 / 16384 * (4096 + u2 * (-768 + u2 * (320 - 175 * u2)))
    B = u2 / 1024 * (256 + u2 * (-128 + u2 * (74 - 47 * u2)))
    delta_sigma = B * sin_sigma * (
        cos_2sigma_m
        + B / 4 * (
            cos_sigma * (-1 + 2 * cos_2sigma_m ** 2)
            - B / 6 * cos_2sigma_m * (-3 + 4 * sin_sigma ** 2) * (-3 + 4 * cos_2sigma_m ** 2)
        )
    )
    return float(WGS84_B * A * (sigma - delta_sigma))


def midpoint(p: GeoPoint, q: GeoPoint) -> GeoPoint:
    """Coordinate midpoint of a short segment (hundreds of meters)."""
    return GeoPoint(lat=(p.lat + q.lat) / 2.0, lon=(p.lon + q.lon) / 2.0)


def fit_bounding_box(points: Sequence[GeoPoint]) -> BoundingBox:
    if not points:
        raise ValueError("bounding box needs at least one point")
    lats = [pt.lat for pt in points]
    lons = [pt.lon for pt in points]
    return BoundingBox(min_lat=min(lats), max_lat=max(lats), min_lon=min(lons), max_lon=max(lons))


def apply_bounding_box(points: Sequence[GeoPoint], box: BoundingBox) -> List[Tuple[float, float]]:
    """Per-axis affine normalization; x follows longitude, y latitude."""
    lons = np.array([pt.lon for pt in points], dtype=np.float64)
    lats = np.array([pt.lat for pt in points], dtype=np.float64)

    def scale(values, lo, hi):
        if hi == lo:
            return np.zeros_like(values)
        return np.clip((values - lo) / (hi - lo), 0.0, 1.0)

    xs = scale(lons, box.min_lon, box.max_lon)
    ys = scale(lats, box.min_lat, box.max_lat)
    return [(float(x), float(y)) for x, y in zip(xs, ys)]


def normalize_spatial(points: Sequence[GeoPoint]) -> Tuple[List[Tuple[float, float]], BoundingBox]:
    """Normalize positions into [0, 1]^2 against their bounding rectangle."""
    box = fit_bounding_box(points)
    return apply_bounding_box(points, box), box
