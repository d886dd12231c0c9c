"""Triangles inscribed in a circle whose sides pass through three given points.

Side i (opposite vertex V_i) must pass through P_i. The carrier is either a
planar circle or a small circle on the unit sphere; on the sphere a "side" is
the great circle through two vertices.

Vertex V1 runs around the carrier with parameter t. The chord from V1 through
P3 meets the carrier again at V2, the chord from V2 through P1 gives V3, and
the chord from V3 through P2 closes the chain at g(t). Inscribed triangles are
the fixed points g(t) = t, found by scanning the wrapped mismatch g(t) - t and
refining each bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import kernels
from .apollonius import Circle2D
from .core import DEFAULT_TOLERANCES, SmallCircle, Tolerances, wrap_angle
from .errors import DegenerateChain, InvalidInput, NoSolution

MERGE_TOL = 1e-8
DEGENERATE_TOL = 1e-8


@dataclass(frozen=True)
class InscribedTriangleProblem:
    carrier: Union[Circle2D, SmallCircle]
    points: tuple

    def __post_init__(self):
        if isinstance(self.carrier, Circle2D):
            if not self.carrier.r > 0:
                raise InvalidInput("carrier radius must be positive")
            pts = tuple(np.asarray(p, dtype=float).reshape(2) for p in self.points)
        elif isinstance(self.carrier, SmallCircle):
            pts = []
            for p in self.points:
                v = np.asarray(p, dtype=float).reshape(3)
                pts.append(v / np.linalg.norm(v))
            pts = tuple(pts)
        else:
            raise InvalidInput("carrier must be a Circle2D or a SmallCircle")
        if len(pts) != 3:
            raise InvalidInput("exactly three points are required")
        for i in range(3):
            for j in range(i + 1, 3):
                if np.allclose(pts[i], pts[j], rtol=0, atol=1e-12):
                    raise InvalidInput("the three points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    @property
    def spherical(self) -> bool:
        return isinstance(self.carrier, SmallCircle)

    def frame(self):
        """(center, e1, e2, radius, points) embedding the carrier in 3-space."""
        c = self.carrier
        if self.spherical:
            e1, e2 = c.basis()
            center = math.cos(c.radius) * c.pole.vec
            radius = math.sin(c.radius)
            pts = np.array(self.points)
        else:
            center = np.array([c.cx, c.cy, 0.0])
            e1, e2 = np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
            radius = c.r
            pts = np.array([[p[0], p[1], 0.0] for p in self.points])
        return center, e1, e2, radius, pts

    def vertex(self, t: float) -> np.ndarray:
        center, e1, e2, radius, _ = self.frame()
        v = center + radius * (math.cos(t) * e1 + math.sin(t) * e2)
        return v if self.spherical else v[:2]


@dataclass(frozen=True)
class InscribedTriangle:
    vertices: tuple  # (V1, V2, V3)
    parameters: tuple  # carrier parameters of V1, V2, V3 in [0, 2 pi)
    residual: float


def incidence_residuals(prob: InscribedTriangleProblem, vertices) -> tuple[float, float]:
    """(max distance of P_i from side i, max distance of a vertex from the carrier)."""
    V = [np.asarray(v, dtype=float) for v in vertices]
    side = []
    for i in range(3):
        p, q = V[(i + 1) % 3], V[(i + 2) % 3]
        P = prob.points[i]
        if prob.spherical:
            n = np.cross(p, q)
            side.append(abs(float(n @ P)) / float(np.linalg.norm(n)))
        else:
            d = q - p
            side.append(abs(float(d[0] * (P[1] - p[1]) - d[1] * (P[0] - p[0]))) / float(np.hypot(*d)))
    c = prob.carrier
    if prob.spherical:
        on = [abs(float(v @ c.pole.vec) - math.cos(c.radius)) for v in V]
    else:
        on = [abs(float(np.hypot(v[0] - c.cx, v[1] - c.cy)) - c.r) for v in V]
    return max(side), max(on)


def closure_mismatch(prob: InscribedTriangleProblem, ts, backend=None) -> np.ndarray:
    chain = kernels.closure_chain(ts, *prob.frame(), prob.spherical, backend=backend)
    return wrap_angle(chain[:, 2] - np.atleast_1d(ts))


def _scalar_mismatch(prob, frame):
    def f(t):
        chain = kernels.closure_chain(np.array([t]), *frame, prob.spherical)
        return float(wrap_angle(chain[0, 2] - t))

    return f


def _candidates(ts, m, step):
    """Brackets with a sign change and near-tangential minima of |m| (cyclic)."""
    n = len(ts)
    brackets, touches = [], []
    for i in range(n):
        j = (i + 1) % n
        mi, mj = m[i], m[j]
        if not (np.isfinite(mi) and np.isfinite(mj)):
            continue
        if mi == 0.0:
            brackets.append((ts[i], ts[i]))
        elif mi * mj < 0 and abs(mi) < 1.0 and abs(mj) < 1.0:  # not a wrap-around jump
            brackets.append((ts[i], ts[i] + step))
    am = np.abs(m)
    for i in range(n):
        lo, hi = am[i - 1], am[(i + 1) % n]
        if am[i] <= lo and am[i] <= hi and am[i] < 10 * step and m[i - 1] * m[(i + 1) % n] > 0 and m[i] * m[i - 1] > 0:
            touches.append(ts[i])
    return brackets, touches


def pappus_inscribed_triangle(
    prob: InscribedTriangleProblem, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[InscribedTriangle]:
    """All inscribed triangles with side i through P_i, sorted by the parameter of V1."""
    frame = prob.frame()
    n = tol.root_scan_steps
    step = 2 * math.pi / n
    ts = np.arange(n) * step
    m = closure_mismatch(prob, ts)
    if np.all(np.isfinite(m)) and np.max(np.abs(m)) < 1e-9:
        raise DegenerateChain("the closure map is the identity: every vertex closes up")
    f = _scalar_mismatch(prob, frame)
    brackets, touches = _candidates(ts, m, step)
    roots = []
    for lo, hi in brackets:
        if lo == hi:
            roots.append(lo)
            continue
        try:
            roots.append(brentq(f, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200))
        except ValueError:
            continue
    for t0 in touches:
        res = minimize_scalar(
            lambda t: f(t) ** 2, bounds=(t0 - step, t0 + step), method="bounded", options={"xatol": 1e-14}
        )
        roots.append(float(res.x))

    out: list[InscribedTriangle] = []
    for t in roots:
        chain = kernels.closure_chain(np.array([t]), *frame, prob.spherical)[0]
        params = [t % (2 * math.pi), chain[0] % (2 * math.pi), chain[1] % (2 * math.pi)]
        if not all(np.isfinite(params)):
            continue
        verts = tuple(prob.vertex(p) for p in params)
        side, on = incidence_residuals(prob, verts)
        if max(side, on) >= tol.residual_eps:
            continue
        if min(np.linalg.norm(verts[i] - verts[(i + 1) % 3]) for i in range(3)) < DEGENERATE_TOL:
            continue
        if any(max(np.linalg.norm(u - v) for u, v in zip(verts, other.vertices)) < MERGE_TOL for other in out):
            continue
        out.append(InscribedTriangle(verts, tuple(params), max(side, on)))
    if not out:
        raise NoSolution("no inscribed triangle closes up")
    return sorted(out, key=lambda tri: tri.parameters[0])
