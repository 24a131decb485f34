"""Spherical geometry primitives: points, polylines, bearings, turn angles.

All angles are degrees. Bearings are compass bearings in [0, 360), measured
clockwise from north. Signed angles (turns) live in (-180, 180], clockwise
positive. Distances are meters on a sphere of radius 6371 km.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateInput

EARTH_RADIUS_M = 6_371_000.0
#: meters per degree of arc on the model sphere
METERS_PER_DEGREE = EARTH_RADIUS_M * math.pi / 180.0


def wrap_signed(angle: float) -> float:
    """Wrap an angle in degrees to (-180, 180]."""
    a = (angle + 180.0) % 360.0 - 180.0
    return 180.0 if a == -180.0 else a


def wrap_unsigned(a: float, b: float) -> float:
    """Smallest angular separation between two directions, in [0, 180]."""
    return abs(wrap_signed(a - b))


@dataclass(frozen=True)
class GeoPoint:
    """A latitude/longitude pair in degrees. Longitude is normalized to (-180, 180]."""

    lat: float
    lon: float

    def __post_init__(self) -> None:
        if not (-90.0 <= self.lat <= 90.0):
            raise DegenerateInput(f"latitude {self.lat} outside [-90, 90]")
        if math.isnan(self.lon) or math.isinf(self.lon):
            raise DegenerateInput(f"longitude {self.lon} is not finite")
        lon = (self.lon + 180.0) % 360.0 - 180.0
        if lon == -180.0:
            lon = 180.0
        object.__setattr__(self, "lon", lon)


@dataclass(frozen=True)
class Polyline:
    """An ordered run of at least two points with no consecutive duplicates."""

    points: tuple[GeoPoint, ...]

    def __post_init__(self) -> None:
        pts = tuple(self.points)
        if len(pts) < 2:
            raise DegenerateInput("polyline needs at least 2 points")
        for a, b in zip(pts, pts[1:]):
            if a == b:
                raise DegenerateInput("polyline has consecutive duplicate points")
        object.__setattr__(self, "points", pts)

    @property
    def start(self) -> GeoPoint:
        return self.points[0]

    @property
    def end(self) -> GeoPoint:
        return self.points[-1]

    def reversed(self) -> "Polyline":
        return Polyline(tuple(reversed(self.points)))


def geo_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Haversine distance in meters."""
    lat1, lat2 = math.radians(a.lat), math.radians(b.lat)
    dlat = lat2 - lat1
    dlon = math.radians(b.lon - a.lon)
    h = math.sin(dlat / 2.0) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))


def initial_bearing(a: GeoPoint, b: GeoPoint) -> float:
    """Bearing of the great circle from a toward b, in [0, 360).

    Raises:
        DegenerateInput: if the points coincide.
    """
    if a == b:
        raise DegenerateInput("bearing undefined for identical points")
    lat1, lat2 = math.radians(a.lat), math.radians(b.lat)
    dlon = math.radians(b.lon - a.lon)
    y = math.sin(dlon) * math.cos(lat2)
    x = math.cos(lat1) * math.sin(lat2) - math.sin(lat1) * math.cos(lat2) * math.cos(dlon)
    return math.degrees(math.atan2(y, x)) % 360.0


def destination_point(origin: GeoPoint, bearing: float, distance_m: float) -> GeoPoint:
    """Point reached by traveling distance_m along the given initial bearing."""
    delta = distance_m / EARTH_RADIUS_M
    theta = math.radians(bearing)
    lat1 = math.radians(origin.lat)
    lon1 = math.radians(origin.lon)
    lat2 = math.asin(
        math.sin(lat1) * math.cos(delta) + math.cos(lat1) * math.sin(delta) * math.cos(theta)
    )
    lon2 = lon1 + math.atan2(
        math.sin(theta) * math.sin(delta) * math.cos(lat1),
        math.cos(delta) - math.sin(lat1) * math.sin(lat2),
    )
    return GeoPoint(math.degrees(lat2), math.degrees(lon2))


def polyline_length(line: Polyline) -> float:
    """Sum of haversine lengths of the polyline's straight pieces, meters."""
    return sum(geo_distance(a, b) for a, b in zip(line.points, line.points[1:]))


def polyline_bearings(line: Polyline) -> list[float]:
    """Bearing of each consecutive point pair, in order."""
    return [initial_bearing(a, b) for a, b in zip(line.points, line.points[1:])]


def segment_curvature(line: Polyline) -> float:
    """Mean deviation of the polyline's bearings from its end-to-end bearing.

    Each consecutive-point bearing is compared with the bearing from the first
    point straight to the last; deviations are wrapped into [0, 180] and
    averaged. A straight two-point polyline scores 0.

    Raises:
        DegenerateInput: if the first and last points coincide, which leaves
            the end-to-end bearing undefined.
    """
    if line.start == line.end:
        raise DegenerateInput("curvature undefined when endpoints coincide")
    base = initial_bearing(line.start, line.end)
    devs = [wrap_unsigned(b, base) for b in polyline_bearings(line)]
    return sum(devs) / len(devs)


def turn_angle(incoming: Polyline, outgoing: Polyline) -> float:
    """Signed heading change when leaving `incoming` for `outgoing`.

    Clockwise (right) turns are positive. The result is in (-180, 180].
    The caller guarantees the polylines meet: incoming.end == outgoing.start.
    """
    exit_bearing = initial_bearing(incoming.points[-2], incoming.points[-1])
    entry_bearing = initial_bearing(outgoing.points[0], outgoing.points[1])
    return wrap_signed(entry_bearing - exit_bearing)


# -- local tangent-plane projection ------------------------------------------
#
# Small-area work (bounding boxes, point-to-road distance, uniform disc
# sampling) happens in an equirectangular plane anchored at a reference
# point: x is meters east, y is meters north.


def project_local(point: GeoPoint, ref: GeoPoint) -> tuple[float, float]:
    """Project a point into the tangent plane anchored at ref. Returns (x, y) meters."""
    x = (point.lon - ref.lon) * METERS_PER_DEGREE * math.cos(math.radians(ref.lat))
    y = (point.lat - ref.lat) * METERS_PER_DEGREE
    return x, y


def unproject_local(x: float, y: float, ref: GeoPoint) -> GeoPoint:
    """Inverse of project_local for the same reference point."""
    lat = ref.lat + y / METERS_PER_DEGREE
    lon = ref.lon + x / (METERS_PER_DEGREE * math.cos(math.radians(ref.lat)))
    return GeoPoint(lat, lon)


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned lat/lon rectangle."""

    min_lat: float
    min_lon: float
    max_lat: float
    max_lon: float

    def contains(self, p: GeoPoint) -> bool:
        return self.min_lat <= p.lat <= self.max_lat and self.min_lon <= p.lon <= self.max_lon

    def padded(self, meters: float) -> "BoundingBox":
        """Grow every side by a distance in meters (longitude scaled by latitude)."""
        dlat = meters / METERS_PER_DEGREE
        mid = math.radians((self.min_lat + self.max_lat) / 2.0)
        dlon = meters / (METERS_PER_DEGREE * max(math.cos(mid), 1e-9))
        return BoundingBox(
            self.min_lat - dlat, self.min_lon - dlon, self.max_lat + dlat, self.max_lon + dlon
        )


def bounds_of(points: list[GeoPoint]) -> BoundingBox:
    """Tight bounding box of a non-empty point collection."""
    if not points:
        raise DegenerateInput("bounding box of an empty point set")
    lats = [p.lat for p in points]
    lons = [p.lon for p in points]
    return BoundingBox(min(lats), min(lons), max(lats), max(lons))
