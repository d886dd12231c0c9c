"""Concurrent cevians in the Euclidean plane, on the sphere and in the hyperbolic plane.

If the cevians Aa, Bb, Cc of a triangle meet at O, the ratios
r1 = f(AO)/f(Oa), r2 = f(BO)/f(Ob), r3 = f(CO)/f(Oc) satisfy

    r1 r2 r3 = r1 + r2 + r3 + 2

with f the identity (plane), tan (sphere) or tanh (hyperbolic plane).

Points are stored in each geometry's linear model: plane points as (x, y),
sphere points as unit 3-vectors, hyperbolic points on the hyperboloid
x^2 + y^2 - t^2 = -1, t > 0. In all three, geodesics through p and q are
cut out by the plane with normal ``lift(p) x lift(q)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCES
from .errors import IdentityViolated, InvalidConfig, InvalidInput, NoRealization, QuarterSphereViolation

GEOMETRIES = ("euclidean", "spherical", "hyperbolic")
_RATIO_FN = {"euclidean": lambda x: x, "spherical": math.tan, "hyperbolic": math.tanh}
_MINKOWSKI = np.diag([1.0, 1.0, -1.0])


def _check_geometry(geometry: str) -> str:
    if geometry not in GEOMETRIES:
        raise InvalidInput(f"unknown geometry {geometry!r}")
    return geometry


def lift(geometry: str, p) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    return np.array([p[0], p[1], 1.0]) if geometry == "euclidean" else p


def distance(geometry: str, p, q) -> float:
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    if geometry == "euclidean":
        return float(np.linalg.norm(p - q))
    if geometry == "spherical":
        return math.atan2(float(np.linalg.norm(np.cross(p, q))), float(p @ q))
    d = p - q
    return 2.0 * math.asinh(0.5 * math.sqrt(max(float(d @ _MINKOWSKI @ d), 0.0)))


def incidence_residual(geometry: str, x, p, q) -> float:
    """Normalized distance of ``x`` from the geodesic through ``p`` and ``q``."""
    n = np.cross(lift(geometry, p), lift(geometry, q))
    if geometry == "euclidean":
        # signed distance to the line, exactly
        return abs(float(n @ lift(geometry, x))) / float(np.hypot(n[0], n[1]))
    return abs(float(n @ lift(geometry, x))) / (float(np.linalg.norm(n)) * float(np.linalg.norm(x)))


def intersect(geometry: str, p1, q1, p2, q2, hint=None) -> np.ndarray:
    """Intersection of the geodesics p1q1 and p2q2 (sphere: the one nearest ``hint``)."""
    v = np.cross(np.cross(lift(geometry, p1), lift(geometry, q1)), np.cross(lift(geometry, p2), lift(geometry, q2)))
    if geometry == "euclidean":
        if v[2] == 0.0:
            raise InvalidConfig("parallel lines")
        return v[:2] / v[2]
    if geometry == "spherical":
        v = v / np.linalg.norm(v)
        if hint is not None and v @ np.asarray(hint) < 0:
            v = -v
        return v
    m = float(v @ _MINKOWSKI @ v)
    if m >= 0:
        raise InvalidConfig("geodesics do not meet in the hyperbolic plane")
    v = v / math.sqrt(-m)
    return v if v[2] > 0 else -v


def _tangent(geometry: str, O, p) -> np.ndarray:
    """Direction of p as seen from O, in the ambient coordinates."""
    O, p = np.asarray(O, dtype=float), np.asarray(p, dtype=float)
    if geometry == "euclidean":
        return p - O
    if geometry == "spherical":
        return p - (p @ O) * O
    return p + float(p @ _MINKOWSKI @ O) * O


def _between(geometry: str, O, p, q) -> bool:
    """Whether O lies on the geodesic segment pq (the two directions from O oppose)."""
    u, v = _tangent(geometry, O, p), _tangent(geometry, O, q)
    form = np.eye(len(u)) if geometry != "hyperbolic" else _MINKOWSKI
    return float(u @ form @ v) < 0.0


@dataclass(frozen=True)
class CevianConfig:
    geometry: str
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    O: np.ndarray

    @property
    def lengths(self) -> tuple[float, ...]:
        """(AO, Oa, BO, Ob, CO, Oc)."""
        g = self.geometry
        return tuple(
            distance(g, v, self.O) if k % 2 == 0 else distance(g, self.O, v)
            for k, v in enumerate((self.A, self.a, self.B, self.b, self.C, self.c))
        )

    def signs(self) -> tuple[int, int, int]:
        """+1 for each cevian on which O lies between vertex and foot, else -1."""
        g = self.geometry
        return tuple(
            1 if _between(g, self.O, v, f) else -1 for v, f in ((self.A, self.a), (self.B, self.b), (self.C, self.c))
        )

    def residuals(self) -> dict[str, float]:
        g = self.geometry
        return {
            "collinear": max(
                incidence_residual(g, self.O, self.A, self.a),
                incidence_residual(g, self.O, self.B, self.b),
                incidence_residual(g, self.O, self.C, self.c),
            ),
            "incidence": max(
                incidence_residual(g, self.a, self.B, self.C),
                incidence_residual(g, self.b, self.A, self.C),
                incidence_residual(g, self.c, self.A, self.B),
            ),
        }

    def check(self, tol: float = DEFAULT_TOLERANCES.residual_eps) -> None:
        worst = max(self.residuals().values())
        if not worst <= tol:
            raise InvalidConfig(f"cevian incidence residual {worst:.3g} exceeds {tol:.3g}")
        if self.geometry == "spherical" and max(self.lengths) >= math.pi / 2:
            raise QuarterSphereViolation("spherical configurations must fit in a quarter sphere about O")

    def to_dict(self) -> dict:
        return {
            "geometry": self.geometry,
            **{k: [float(x) for x in getattr(self, k)] for k in ("A", "B", "C", "a", "b", "c", "O")},
            "lengths": list(self.lengths),
        }


def cevian_config(geometry: str, A, B, C, O) -> CevianConfig:
    """Feet of the cevians through O, found by geodesic intersection."""
    _check_geometry(geometry)
    A, B, C, O = (np.asarray(v, dtype=float) for v in (A, B, C, O))
    a = intersect(geometry, A, O, B, C, hint=O)
    b = intersect(geometry, B, O, A, C, hint=O)
    c = intersect(geometry, C, O, A, B, hint=O)
    return CevianConfig(geometry, A, B, C, a, b, c, O)


def gap_from_lengths(lengths, geometry: str, signs=(1, 1, 1)) -> float:
    """r1 r2 r3 - (r1 + r2 + r3 + 2) for (AO, Oa, BO, Ob, CO, Oc)."""
    f = _RATIO_FN[_check_geometry(geometry)]
    r = [s * f(lengths[2 * i]) / f(lengths[2 * i + 1]) for i, s in enumerate(signs)]
    return r[0] * r[1] * r[2] - (r[0] + r[1] + r[2] + 2.0)


def cevian_identity_gap(cfg: CevianConfig, tol: float = DEFAULT_TOLERANCES.residual_eps) -> float:
    """Gap of the cevian identity; zero for a genuine concurrent configuration.

    Ratios are signed: negative when O is not between the vertex and the foot,
    which keeps the identity valid for an exterior O.
    """
    _check_geometry(cfg.geometry)
    cfg.check(tol)
    return gap_from_lengths(cfg.lengths, cfg.geometry, cfg.signs())


def _from_center(geometry: str, direction, length: float) -> np.ndarray:
    u = np.asarray(direction, dtype=float)
    if geometry == "euclidean":
        return length * u
    if geometry == "spherical":
        return np.array([math.sin(length) * u[0], math.sin(length) * u[1], math.cos(length)])
    return np.array([math.sinh(length) * u[0], math.sinh(length) * u[1], math.cosh(length)])


def construct_triangle_from_cevians(
    lengths, geometry: str, tol: float = DEFAULT_TOLERANCES.residual_eps
) -> CevianConfig:
    """Realize six cevian lengths (AO, Oa, BO, Ob, CO, Oc) as a triangle with interior O.

    The central projection about O (gnomonic on the sphere, Beltrami-Klein in
    the hyperbolic plane) turns each length d into f(d) and geodesics into
    lines, so the problem is solved in the plane. There the weights
    w_i = 1 / (1 + r_i) are O's barycentric coordinates, and the vectors
    w_i f(vertex length_i) u_i must close up into a triangle; this fixes
    the directions u_i of the three cevians.
    """
    _check_geometry(geometry)
    L = [float(x) for x in lengths]
    if len(L) != 6 or not all(math.isfinite(x) and x > 0 for x in L):
        raise InvalidInput("need six positive lengths")
    if geometry == "spherical" and max(L) >= math.pi / 2:
        raise QuarterSphereViolation("spherical cevian lengths must be below pi/2")
    f = _RATIO_FN[geometry]
    img = [f(x) for x in L]
    r = [img[0] / img[1], img[2] / img[3], img[4] / img[5]]
    gap = r[0] * r[1] * r[2] - (r[0] + r[1] + r[2] + 2.0)
    if abs(gap) > 1e-9 * max(1.0, r[0] * r[1] * r[2]):
        raise IdentityViolated(f"lengths miss the cevian identity by {gap:.3g}")
    w = [1.0 / (1.0 + x) for x in r]
    s1, s2, s3 = w[0] * img[0], w[1] * img[2], w[2] * img[4]
    if not (s1 < s2 + s3 and s2 < s1 + s3 and s3 < s1 + s2):
        raise NoRealization("cevian directions cannot close up")
    cos12 = (s3 * s3 - s1 * s1 - s2 * s2) / (2 * s1 * s2)
    theta = math.acos(max(-1.0, min(1.0, cos12)))
    u1 = np.array([1.0, 0.0])
    u2 = np.array([math.cos(theta), math.sin(theta)])
    u3 = -(s1 * u1 + s2 * u2)
    u3 /= np.linalg.norm(u3)
    O = _from_center(geometry, np.zeros(2), 0.0)
    pts = {}
    for name, foot, u, (far, near) in zip("ABC", "abc", (u1, u2, u3), zip(L[0::2], L[1::2])):
        pts[name] = _from_center(geometry, u, far)
        pts[foot] = _from_center(geometry, -u, near)
    cfg = CevianConfig(geometry, pts["A"], pts["B"], pts["C"], pts["a"], pts["b"], pts["c"], O)
    if max(cfg.residuals().values()) > tol:
        raise NoRealization("realized configuration misses the incidence tolerance")
    return cfg


def quadrilateral_identity_gap(P1, P2, P3, P4) -> float:
    """Sum of squared sides minus squared diagonals and four times the squared
    distance between the diagonal midpoints; identically zero."""
    P = [np.asarray(p, dtype=float) for p in (P1, P2, P3, P4)]
    sides = sum(float(np.sum((P[i] - P[(i + 1) % 4]) ** 2)) for i in range(4))
    diagonals = float(np.sum((P[0] - P[2]) ** 2) + np.sum((P[1] - P[3]) ** 2))
    mid = 0.5 * (P[0] + P[2]) - 0.5 * (P[1] + P[3])
    return sides - (diagonals + 4.0 * float(mid @ mid))
