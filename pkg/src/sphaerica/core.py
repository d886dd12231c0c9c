"""Angles, points on the unit sphere, great and small circles, tolerances."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, InvalidInput

UNIT_NORM_TOL = 1e-12


@dataclass(frozen=True)
class Tolerances:
    abs_eps: float = 1e-10
    residual_eps: float = 1e-8
    root_scan_steps: int = 4096

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.residual_eps > 0 and self.root_scan_steps > 0):
            raise InvalidInput("tolerances must be positive")


DEFAULT_TOLERANCES = Tolerances()


def check_element(value: float, name: str = "element") -> float:
    """Return ``value`` as a float if it lies in the open interval (0, pi)."""
    value = float(value)
    if not (math.isfinite(value) and 0.0 < value < math.pi):
        raise InvalidInput(f"{name}={value!r} must lie in (0, pi)")
    return value


@dataclass(frozen=True)
class SpherePoint:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n2 = self.x * self.x + self.y * self.y + self.z * self.z
        if not math.isfinite(n2) or abs(n2 - 1.0) > UNIT_NORM_TOL:
            raise InvalidInput(f"({self.x}, {self.y}, {self.z}) is not a unit vector")

    @classmethod
    def from_vector(cls, v) -> SpherePoint:
        """Normalize an arbitrary non-zero 3-vector onto the sphere."""
        v = np.asarray(v, dtype=float).reshape(3)
        n = float(np.linalg.norm(v))
        if not math.isfinite(n) or n == 0.0:
            raise DegenerateInput("cannot normalize a zero or non-finite vector")
        v = v / n
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def antipode(self) -> SpherePoint:
        return SpherePoint(-self.x, -self.y, -self.z)


def as_vec(p) -> np.ndarray:
    if isinstance(p, SpherePoint):
        return p.vec
    return np.asarray(p, dtype=float)


@dataclass(frozen=True)
class GreatCircle:
    pole: SpherePoint

    def contains(self, p: SpherePoint, tol: float = DEFAULT_TOLERANCES.abs_eps) -> bool:
        return abs(float(np.dot(self.pole.vec, as_vec(p)))) <= tol


@dataclass(frozen=True)
class SmallCircle:
    pole: SpherePoint
    radius: float

    def __post_init__(self):
        check_element(self.radius, "radius")

    def basis(self) -> tuple[np.ndarray, np.ndarray]:
        """Orthonormal pair spanning the plane perpendicular to the pole."""
        return tangent_basis(self.pole.vec)

    def point_at(self, t: float) -> np.ndarray:
        e1, e2 = self.basis()
        r = self.radius
        return math.cos(r) * self.pole.vec + math.sin(r) * (math.cos(t) * e1 + math.sin(t) * e2)

    def parameter_of(self, p) -> float:
        e1, e2 = self.basis()
        p = as_vec(p)
        return math.atan2(float(p @ e2), float(p @ e1))

    def great_circle(self) -> GreatCircle:
        return GreatCircle(self.pole)


def tangent_basis(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Deterministic: seed with the coordinate axis least aligned with n.
    n = np.asarray(n, dtype=float)
    seed = np.zeros(3)
    seed[int(np.argmin(np.abs(n)))] = 1.0
    e1 = seed - (seed @ n) * n
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    return e1, e2


def angular_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Angle between two points in [0, pi].

    Equal to arccos(p . q), but taken as atan2(|p x q|, p . q), which keeps
    full precision for nearly coincident and nearly antipodal points.
    """
    u, v = as_vec(p), as_vec(q)
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def great_circle_through(
    p: SpherePoint, q: SpherePoint, tol: float = DEFAULT_TOLERANCES.abs_eps
) -> GreatCircle:
    """Great circle through ``p`` and ``q`` with pole ``p x q`` (order-sensitive)."""
    n = np.cross(as_vec(p), as_vec(q))
    norm = float(np.linalg.norm(n))
    if norm <= tol:
        raise DegenerateInput("points are coincident or antipodal")
    return GreatCircle(SpherePoint.from_vector(n / norm))


def small_circle_contains(c: SmallCircle, p: SpherePoint, tol: float) -> bool:
    if not tol > 0:
        raise InvalidInput("tol must be positive")
    return abs(float(np.dot(c.pole.vec, as_vec(p))) - math.cos(c.radius)) <= tol


def wrap_angle(x):
    """Map angles into [-pi, pi)."""
    return (x + np.pi) % (2.0 * np.pi) - np.pi
