"""Apex loci of triangles with a fixed base and a fixed area.

In the plane the locus is a pair of lines parallel to the base; on the
sphere it is an arc of a small circle (Lexell's circle). The spherical
circle is found numerically from three root-found apices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .area import heron_spherical_area
from .core import (
    DEFAULT_TOLERANCES,
    SmallCircle,
    SpherePoint,
    angular_distance,
    as_vec,
    great_circle_through,
    wrap_angle,
)
from .errors import DegenerateInput, InvalidTriangle, UnattainableArea

PI = math.pi


@dataclass(frozen=True)
class Line2D:
    """The line {p : normal . p = offset} with a unit normal."""

    normal: tuple[float, float]
    offset: float

    def point_at(self, s: float) -> np.ndarray:
        n = np.asarray(self.normal)
        return self.offset * n + s * np.array([-n[1], n[0]])

    def distance(self, p) -> float:
        return abs(float(np.dot(self.normal, p)) - self.offset)


def euclidean_equal_area_locus(A, B, S: float) -> tuple[Line2D, Line2D]:
    """Lines of apices P with area(ABP) = S; the left side of AB first."""
    A, B = np.asarray(A, dtype=float), np.asarray(B, dtype=float)
    base = B - A
    length = float(np.hypot(*base))
    if length == 0.0:
        raise DegenerateInput("base endpoints coincide")
    if not S > 0:
        raise UnattainableArea("area must be positive")
    n = np.array([-base[1], base[0]]) / length
    h = 2.0 * S / length
    c = float(n @ A)
    return Line2D((float(n[0]), float(n[1])), c + h), Line2D((float(n[0]), float(n[1])), c - h)


def spherical_triangle_area_from_vertices(P, Q, R, tol: float = DEFAULT_TOLERANCES.abs_eps) -> float:
    pts = [p if isinstance(p, SpherePoint) else SpherePoint.from_vector(p) for p in (P, Q, R)]
    sides = [angular_distance(pts[1], pts[2]), angular_distance(pts[0], pts[2]), angular_distance(pts[0], pts[1])]
    if any(s <= tol or s >= PI - tol for s in sides):
        raise DegenerateInput("vertices coincide or are antipodal")
    try:
        return heron_spherical_area(*sides)
    except InvalidTriangle as exc:
        raise DegenerateInput("vertices lie on one great circle") from exc


@dataclass(frozen=True)
class LexellLocus:
    base_a: SpherePoint
    base_b: SpherePoint
    area: float
    circle: SmallCircle
    apices: tuple[SpherePoint, ...]
    side: int  # +1 if the locus lies on the side of the pole of great_circle_through(A, B)

    @property
    def base_pole(self) -> np.ndarray:
        return great_circle_through(self.base_a, self.base_b).pole.vec

    def arc(self) -> tuple[float, float]:
        """Parameter interval (start, end), end > start, of the locus arc on the circle."""
        c = self.circle
        e1, e2 = c.basis()
        n = self.base_pole
        alpha = math.sin(c.radius) * float(n @ e1)
        beta = math.sin(c.radius) * float(n @ e2)
        gamma = -math.cos(c.radius) * float(n @ c.pole.vec)
        R = math.hypot(alpha, beta)
        phi_apex = c.parameter_of(self.apices[0])
        if R <= abs(gamma):
            return phi_apex - PI, phi_apex + PI
        phi0 = math.atan2(beta, alpha)
        delta = math.acos(gamma / R)
        if abs(wrap_angle(phi_apex - phi0)) < delta:
            return phi0 - delta, phi0 + delta
        return phi0 + delta, phi0 - delta + 2 * PI

    def sample(self, k: int) -> list[np.ndarray]:
        """``k`` points spread over the interior of the locus arc."""
        lo, hi = self.arc()
        return [self.circle.point_at(lo + (hi - lo) * (i + 0.5) / k) for i in range(k)]


def _apex_on_path(A, B, foot, direction, S) -> np.ndarray:
    """Root-find the apex with area S on the great circle leaving ``foot`` along ``direction``."""

    def path(t):
        return math.cos(t) * foot + math.sin(t) * direction

    def f(t):
        try:
            return spherical_triangle_area_from_vertices(A, B, path(t)) - S
        except DegenerateInput:
            # the path ends on the base great circle: area 0 near the foot, 2 pi opposite
            return (0.0 if t < PI / 2 else 2 * PI) - S

    grid = np.linspace(0.0, PI, 129)[1:-1]
    vals = np.array([f(t) for t in grid])
    hits = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
    if vals[0] > 0:
        lo, hi = 1e-9, grid[0]
    elif len(hits):
        lo, hi = grid[hits[0]], grid[hits[0] + 1]
    elif vals[-1] < 0:
        lo, hi = grid[-1], PI - 1e-9
        if f(hi) < 0:
            raise UnattainableArea(f"area {S} is not attained above this base")
    else:
        raise UnattainableArea(f"area {S} is not attained above this base")
    t = brentq(f, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200)
    return path(t)


def _circle_through(p1, p2, p3) -> SmallCircle:
    n = np.cross(p2 - p1, p3 - p1)
    norm = float(np.linalg.norm(n))
    if norm == 0.0:
        raise DegenerateInput("fitting points are collinear")
    n /= norm
    h = float(n @ p1)
    if h < 0:
        n, h = -n, -h
    return SmallCircle(SpherePoint.from_vector(n), math.atan2(math.sqrt(max(0.0, 1 - h * h)), h))


# (signed fraction of the half base towards A (+) or B (-), tilt from the normal)
_PATHS = ((0.45, 0.5), (-0.3, -0.35), (0.7, -0.6), (-0.6, 0.8), (0.2, 0.9), (-0.85, -0.9))


def lexell_circle(A: SpherePoint, B: SpherePoint, S: float) -> LexellLocus:
    """Small circle carrying every apex P with area(ABP) = S on one side of AB."""
    base = great_circle_through(A, B)
    if not 0.0 < S < 2 * PI:
        raise UnattainableArea(f"area {S} outside (0, 2 pi)")
    a, b = as_vec(A), as_vec(B)
    north = base.pole.vec
    mid = (a + b) / np.linalg.norm(a + b)
    along = np.cross(north, mid)
    theta_a = math.atan2(float(a @ along), float(a @ mid))
    theta_b = math.atan2(float(b @ along), float(b @ mid))
    # One path along the perpendicular bisector plus tilted ones from asymmetric
    # feet inside the base arc (tilting keeps the paths from all meeting at the
    # pole); the circle is fitted through the best-spread triple.
    bisector = _apex_on_path(a, b, mid, north, S)
    others = []
    for frac, tilt in _PATHS:
        theta = frac * (theta_a if frac > 0 else -theta_b)
        foot = math.cos(theta) * mid + math.sin(theta) * along
        tangent = math.cos(theta) * along - math.sin(theta) * mid
        others.append(_apex_on_path(a, b, foot, math.cos(tilt) * north + math.sin(tilt) * tangent, S))
    best, spread = None, 0.0
    for i, p in enumerate(others):
        for q in others[i + 1 :]:
            sep = min(np.linalg.norm(p - q), np.linalg.norm(p - bisector), np.linalg.norm(q - bisector))
            if sep > spread:
                best, spread = [bisector, p, q], sep
    if spread < 1e-3:
        raise DegenerateInput("could not find three distinct apices")
    apices = best
    circle = _circle_through(*apices)
    return LexellLocus(
        SpherePoint.from_vector(a),
        SpherePoint.from_vector(b),
        float(S),
        circle,
        tuple(SpherePoint.from_vector(p) for p in apices),
        1,
    )
