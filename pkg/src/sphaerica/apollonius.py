"""Circles tangent to three circles and spheres tangent to four spheres.

Every given ``i`` carries a tangency sign ``s_i``: +1 for external contact,
-1 for internal. A solution of radius ``r`` satisfies

    |center - center_i| = |r + s_i r_i|.

Squaring and subtracting the first equation from the others leaves a linear
system in (center, r); its one-dimensional solution line is substituted back
into the first quadratic. The same code handles the plane and space.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .errors import DegenerateConfiguration, InvalidInput, NoSolution

log = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-9
MERGE_TOL = 1e-9
COINCIDE_TOL = 1e-6
ALL = "all"


@dataclass(frozen=True)
class Circle2D:
    cx: float
    cy: float
    r: float

    def __post_init__(self):
        _check_radius(self.r)

    @property
    def center(self) -> np.ndarray:
        return np.array([self.cx, self.cy])


@dataclass(frozen=True)
class Sphere3D:
    cx: float
    cy: float
    cz: float
    r: float

    def __post_init__(self):
        _check_radius(self.r)

    @property
    def center(self) -> np.ndarray:
        return np.array([self.cx, self.cy, self.cz])


def _check_radius(r):
    if not (math.isfinite(r) and r >= 0):
        raise InvalidInput(f"radius {r!r} must be finite and non-negative")


Signs = tuple[int, ...]


@dataclass
class TangencyReport:
    solutions: list = field(default_factory=list)  # (shape, signs) pairs
    degenerate: list = field(default_factory=list)  # sign tuples with a rank-deficient system


def tangency_residual(candidate, givens: Sequence, signs: Signs) -> float:
    c = candidate.center
    return max(
        abs(float(np.linalg.norm(c - g.center)) - abs(candidate.r + s * g.r)) for g, s in zip(givens, signs)
    )


def sign_cases(n: int, signs) -> list[Signs]:
    if isinstance(signs, str):
        if signs != ALL:
            raise InvalidInput(f"unknown sign selector {signs!r}")
        return [tuple(s) for s in itertools.product((1, -1), repeat=n)]
    signs = tuple(int(s) for s in signs)
    if len(signs) != n or any(s not in (1, -1) for s in signs):
        raise InvalidInput(f"need {n} signs, each +1 or -1")
    return [signs]


def _solve_case(centers: np.ndarray, radii: np.ndarray, signs: Signs):
    """Real (center, r) pairs with r >= 0 for one sign case, or None if rank-deficient."""
    dim = centers.shape[1]
    sr = np.asarray(signs) * radii
    c0, k0 = centers[0], sr[0]
    # |x - c_i|^2 - (r + k_i)^2 = 0; subtracting i = 0 gives linear rows in (x, r)
    M = np.hstack([2 * (centers[1:] - c0), 2 * (sr[1:] - k0)[:, None]])
    rhs = (centers[1:] ** 2).sum(1) - (c0**2).sum() - (sr[1:] ** 2 - k0**2)
    scale = max(1.0, float(np.abs(M).max()))
    _, sv, vt = np.linalg.svd(M)
    if sv[-1] <= 1e-12 * scale:
        return None
    particular = np.linalg.lstsq(M, rhs, rcond=None)[0]
    direction = vt[-1]
    # substitute z(l) = particular + l * direction into |x - c0|^2 - (r + k0)^2 = 0
    def q(z):
        return float(((z[:dim] - c0) ** 2).sum() - (z[dim] + k0) ** 2)

    dx, dr = direction[:dim], direction[dim]
    qa = float((dx**2).sum() - dr**2)
    px, pr = particular[:dim] - c0, particular[dim] + k0
    qb = 2.0 * float(px @ dx - pr * dr)
    qc = q(particular)
    roots = _quadratic_roots(qa, qb, qc)
    out = []
    for lam in roots:
        z = _polish(particular + lam * direction, centers, sr)
        if z[dim] >= -1e-12:
            z[dim] = max(z[dim], 0.0)
            out.append(z)
    return out


def _quadratic_roots(a: float, b: float, c: float) -> list[float]:
    scale = max(abs(a), abs(b), abs(c))
    if scale == 0.0:
        return []
    a, b, c = a / scale, b / scale, c / scale
    if abs(a) < 1e-14:
        return [] if b == 0.0 else [-c / b]
    disc = b * b - 4 * a * c
    if disc < 0:
        if disc > -1e-12 * max(1.0, b * b):
            disc = 0.0
        else:
            return []
    sq = math.sqrt(disc)
    qq = -0.5 * (b + math.copysign(sq, b))
    if qq == 0.0:
        return [0.0]
    return [qq / a, c / qq]


def _polish(z: np.ndarray, centers: np.ndarray, sr: np.ndarray, steps: int = 3) -> np.ndarray:
    """Newton steps on the full squared tangency system."""
    dim = centers.shape[1]
    for _ in range(steps):
        d = z[:dim] - centers
        F = (d**2).sum(1) - (z[dim] + sr) ** 2
        J = np.hstack([2 * d, -2 * (z[dim] + sr)[:, None]])
        try:
            step = np.linalg.solve(J, F)
        except np.linalg.LinAlgError:
            break
        if not np.all(np.isfinite(step)):
            break
        z = z - step
    return z


def _solve(givens: Sequence, signs, make) -> TangencyReport:
    centers = np.array([g.center for g in givens], dtype=float)
    radii = np.array([g.r for g in givens], dtype=float)
    for i, j in itertools.combinations(range(len(givens)), 2):
        if np.array_equal(centers[i], centers[j]) and radii[i] == radii[j]:
            raise InvalidInput(f"givens {i} and {j} coincide")
    report = TangencyReport()
    dim = centers.shape[1]
    for case in sign_cases(len(givens), signs):
        zs = _solve_case(centers, radii, case)
        if zs is None:
            report.degenerate.append(case)
            log.warning("rank-deficient tangency system for signs %s", case)
            continue
        for z in zs:
            shape = make(z[:dim], z[dim])
            if tangency_residual(shape, givens, case) >= RESIDUAL_TOL:
                continue
            if any(_same(shape, other, COINCIDE_TOL) for other in givens):
                continue  # a given touching the other givens is not a new solution
            if any(_same(shape, other) for other, _ in report.solutions):
                continue
            report.solutions.append((shape, case))
    report.solutions.sort(key=lambda sc: (sc[0].r, *sc[0].center))
    return report


def _same(u, v, tol=MERGE_TOL) -> bool:
    scale = max(1.0, u.r, v.r, float(np.abs(u.center).max()))
    return abs(u.r - v.r) <= tol * scale and float(np.abs(u.center - v.center).max()) <= tol * scale


def finish(report: TangencyReport, n_cases: int):
    if report.degenerate and len(report.degenerate) == n_cases:
        raise DegenerateConfiguration("tangency system is rank-deficient for every sign case")
    if not report.solutions:
        raise NoSolution("no tangent solution with r >= 0")
    return report.solutions


def solve_circles(c1: Circle2D, c2: Circle2D, c3: Circle2D, signs: Union[str, Sequence[int]] = ALL) -> TangencyReport:
    return _solve((c1, c2, c3), signs, lambda x, r: Circle2D(float(x[0]), float(x[1]), float(r)))


def solve_spheres(s1, s2, s3, s4, signs: Union[str, Sequence[int]] = ALL) -> TangencyReport:
    return _solve(
        (s1, s2, s3, s4), signs, lambda x, r: Sphere3D(float(x[0]), float(x[1]), float(x[2]), float(r))
    )


def apollonius_circles(
    c1: Circle2D, c2: Circle2D, c3: Circle2D, signs: Union[str, Sequence[int]] = ALL
) -> list[tuple[Circle2D, Signs]]:
    """Circles tangent to three given circles, sorted by radius then centre.

    Raises DegenerateConfiguration only when every requested sign case is
    rank-deficient; use :func:`solve_circles` to see which cases were.
    """
    return finish(solve_circles(c1, c2, c3, signs), len(sign_cases(3, signs)))


def tangent_spheres(
    s1: Sphere3D, s2: Sphere3D, s3: Sphere3D, s4: Sphere3D, signs: Union[str, Sequence[int]] = ALL
) -> list[tuple[Sphere3D, Signs]]:
    """Spheres tangent to four given spheres, sorted by radius then centre."""
    return finish(solve_spheres(s1, s2, s3, s4, signs), len(sign_cases(4, signs)))
