"""Great-circle navigation on a spherical Earth.

Distances come from the triangle formed by the north pole and the two
points: its sides at the pole are the colatitudes and the angle between
them is the longitude difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SpherePoint
from .errors import DegenerateInput, InvalidInput
from .triangle import _sas_side

PI = math.pi
EARTH_RADIUS_KM = 6371.0
CHORD_SWITCH = 1e-6
POLE_TOL = 1e-12


@dataclass(frozen=True)
class GeoCoordinate:
    """Latitude in [-pi/2, pi/2] and longitude in (-pi, pi], radians."""

    lat: float
    lon: float

    def __post_init__(self):
        if not (math.isfinite(self.lat) and -PI / 2 <= self.lat <= PI / 2):
            raise InvalidInput(f"latitude {self.lat!r} outside [-pi/2, pi/2]")
        if not (math.isfinite(self.lon) and -PI < self.lon <= PI):
            raise InvalidInput(f"longitude {self.lon!r} outside (-pi, pi]")

    @classmethod
    def from_degrees(cls, lat: float, lon: float) -> GeoCoordinate:
        lon = (lon + 180.0) % 360.0 - 180.0
        if lon == -180.0:
            lon = 180.0
        return cls(math.radians(lat), math.radians(lon))

    def to_point(self) -> SpherePoint:
        cl = math.cos(self.lat)
        return SpherePoint.from_vector((cl * math.cos(self.lon), cl * math.sin(self.lon), math.sin(self.lat)))


def _central_angle(p: GeoCoordinate, q: GeoCoordinate) -> float:
    angle = _sas_side(PI / 2 - p.lat, PI / 2 - q.lat, abs(q.lon - p.lon))
    if angle < CHORD_SWITCH:
        chord = float(np.linalg.norm(p.to_point().vec - q.to_point().vec))
        angle = 2.0 * math.asin(min(1.0, 0.5 * chord))
    return angle


def geodesic_distance(p: GeoCoordinate, q: GeoCoordinate, radius_km: float) -> tuple[float, float]:
    """(central angle, arc length in km) between two coordinates."""
    if not (math.isfinite(radius_km) and radius_km > 0):
        raise InvalidInput("radius must be positive")
    # order the arguments so that d(p, q) == d(q, p) bit for bit
    if (q.lat, q.lon) < (p.lat, p.lon):
        p, q = q, p
    angle = _central_angle(p, q)
    return angle, radius_km * angle


def initial_bearing(p: GeoCoordinate, q: GeoCoordinate) -> float:
    """Azimuth at ``p`` of the great circle towards ``q``, clockwise from north, in [0, 2 pi)."""
    if math.cos(p.lat) < POLE_TOL:
        raise DegenerateInput("bearing is undefined at a pole")
    u, v = p.to_point().vec, q.to_point().vec
    if float(np.linalg.norm(np.cross(u, v))) <= POLE_TOL:
        raise DegenerateInput("bearing is undefined between coincident or antipodal points")
    dlon = q.lon - p.lon
    y = math.sin(dlon) * math.cos(q.lat)
    x = math.cos(p.lat) * math.sin(q.lat) - math.sin(p.lat) * math.cos(q.lat) * math.cos(dlon)
    return math.atan2(y, x) % (2 * PI)


def destination(p: GeoCoordinate, bearing: float, angle: float) -> GeoCoordinate:
    """Point reached from ``p`` by walking ``angle`` radians along ``bearing``."""
    u = p.to_point().vec
    north = np.array([-math.sin(p.lat) * math.cos(p.lon), -math.sin(p.lat) * math.sin(p.lon), math.cos(p.lat)])
    east = np.array([-math.sin(p.lon), math.cos(p.lon), 0.0])
    t = math.cos(bearing) * north + math.sin(bearing) * east
    w = math.cos(angle) * u + math.sin(angle) * t
    lat = math.atan2(float(w[2]), math.hypot(float(w[0]), float(w[1])))
    lon = math.atan2(float(w[1]), float(w[0]))
    return GeoCoordinate(lat, lon if lon != -PI else PI)
