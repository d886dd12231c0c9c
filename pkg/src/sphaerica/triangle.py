"""Spherical triangles: fundamental formulae, polar triangle and the solver.

All elements are radians in the open interval (0, pi). Side ``a`` is
opposite angle ``A``, and likewise for ``b``/``B`` and ``c``/``C``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Optional

import numpy as np

from .core import DEFAULT_TOLERANCES, as_vec, check_element
from .errors import DegenerateInput, InvalidInput, InvalidTriangle, NoSolution

PI = math.pi
RESIDUAL_TOL = 1e-9
MERGE_TOL = 1e-9

ELEMENTS = ("a", "b", "c", "A", "B", "C")


@dataclass(frozen=True)
class TriangleData:
    a: float
    b: float
    c: float
    A: float
    B: float
    C: float

    def __post_init__(self):
        for name in ELEMENTS:
            v = getattr(self, name)
            if not (math.isfinite(v) and 0.0 < v < PI):
                raise InvalidTriangle(f"{name}={v!r} outside (0, pi)")
        a, b, c = self.a, self.b, self.c
        if not (a + b + c < 2 * PI and a < b + c and b < a + c and c < a + b):
            raise InvalidTriangle("side lengths violate the triangle inequalities")
        if not (PI < self.A + self.B + self.C < 3 * PI):
            raise InvalidTriangle("angle sum outside (pi, 3 pi)")
        worst = max(self.residuals())
        if worst > RESIDUAL_TOL:
            raise InvalidTriangle(f"inconsistent elements (residual {worst:.3g})")

    def residuals(self) -> tuple[float, ...]:
        """Law-of-cosines and sine-rule residuals, cyclic."""
        s = (self.a, self.b, self.c)
        g = (self.A, self.B, self.C)
        out = []
        for i in range(3):
            j, k = (i + 1) % 3, (i + 2) % 3
            cos_rule = math.cos(s[i]) - math.cos(s[j]) * math.cos(s[k]) - math.sin(s[j]) * math.sin(
                s[k]
            ) * math.cos(g[i])
            sine_rule = math.sin(g[i]) * math.sin(s[j]) - math.sin(g[j]) * math.sin(s[i])
            out += [abs(cos_rule), abs(sine_rule)]
        return tuple(out)

    def as_tuple(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c, self.A, self.B, self.C)

    def as_dict(self) -> dict:
        return {name: getattr(self, name) for name in ELEMENTS}

    @property
    def excess(self) -> float:
        return self.A + self.B + self.C - PI

    def max_difference(self, other: TriangleData) -> float:
        return max(abs(x - y) for x, y in zip(self.as_tuple(), other.as_tuple()))

    @classmethod
    def from_vertices(cls, P, Q, R) -> TriangleData:
        """Triangle with vertices A=P, B=Q, C=R on the unit sphere."""
        P, Q, R = (as_vec(v) for v in (P, Q, R))

        def side(u, v):
            return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(u @ v))

        def corner(at, u, v):
            n1, n2 = np.cross(at, u), np.cross(at, v)
            return math.atan2(float(np.linalg.norm(np.cross(n1, n2))), float(n1 @ n2))

        return cls(
            side(Q, R), side(P, R), side(P, Q), corner(P, Q, R), corner(Q, P, R), corner(R, P, Q)
        )


@dataclass(frozen=True)
class SolveRequest:
    a: Optional[float] = None
    b: Optional[float] = None
    c: Optional[float] = None
    A: Optional[float] = None
    B: Optional[float] = None
    C: Optional[float] = None

    def __post_init__(self):
        known = self.known()
        if len(known) != 3:
            raise InvalidInput(f"exactly three elements must be given, got {sorted(known)}")
        for name, v in known.items():
            check_element(v, name)

    def known(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}

    @property
    def pattern(self) -> str:
        return _classify(self.known())[0]


def _classify(known: dict[str, float]) -> tuple[str, list[int], list[int]]:
    sides = [i for i, n in enumerate("abc") if n in known]
    angles = [i for i, n in enumerate("ABC") if n in known]
    if len(sides) == 3:
        return "SSS", sides, angles
    if len(angles) == 3:
        return "AAA", sides, angles
    if len(sides) == 2:
        # the included angle is the one opposite the missing side
        return ("SAS" if angles[0] not in sides else "SSA"), sides, angles
    return ("ASA" if sides[0] not in angles else "AAS"), sides, angles


def _sas_side(a: float, b: float, C: float) -> float:
    # Half-angle form of the cosine rule; well conditioned for c near 0 and pi.
    sab = math.sin(a) * math.sin(b)
    h = math.sin(0.5 * (a - b)) ** 2 + sab * math.sin(0.5 * C) ** 2
    k = math.cos(0.5 * (a + b)) ** 2 + sab * math.cos(0.5 * C) ** 2
    return 2.0 * math.atan2(math.sqrt(max(h, 0.0)), math.sqrt(max(k, 0.0)))


def _sss_angle(a: float, b: float, c: float) -> float:
    # Half-angle formula for the angle opposite ``a``.
    s = 0.5 * (a + b + c)
    num = math.sin(s - b) * math.sin(s - c)
    den = math.sin(s) * math.sin(s - a)
    return 2.0 * math.atan2(math.sqrt(max(num, 0.0)), math.sqrt(max(den, 0.0)))


def check_sides(a: float, b: float, c: float) -> None:
    for name, v in zip("abc", (a, b, c)):
        if not (math.isfinite(v) and 0.0 < v < PI):
            raise InvalidTriangle(f"side {name}={v!r} outside (0, pi)")
    if not (a + b + c < 2 * PI and a < b + c and b < a + c and c < a + b):
        raise InvalidTriangle(f"sides ({a}, {b}, {c}) violate the triangle inequalities")


def side_from_sas(a: float, b: float, C: float, tol: float = DEFAULT_TOLERANCES.abs_eps) -> float:
    """Side opposite ``C`` given the two sides enclosing it.

    cos c = cos a cos b + sin a sin b cos C, evaluated in half-angle form.
    """
    a, b, C = check_element(a, "a"), check_element(b, "b"), check_element(C, "C")
    c = _sas_side(a, b, C)
    if c <= tol or c >= PI - tol:
        raise DegenerateInput(f"resulting side {c!r} is degenerate")
    return c


def angle_from_sss(a: float, b: float, c: float) -> float:
    """Angle opposite the first side ``a`` of the triple.

    Equivalent to cos A = (cos a - cos b cos c) / (sin b sin c).
    """
    check_sides(a, b, c)
    return _sss_angle(a, b, c)


def sas_expanded(AB: float, AC: float, A: float) -> float:
    """cos BC from two sides and the included angle, sum/difference form."""
    plus, minus = math.cos(AB + AC), math.cos(AB - AC)
    return 0.5 * (minus + plus) + 0.5 * math.cos(A) * (minus - plus)


def hyperbolic_side_from_sas(a: float, b: float, C: float) -> float:
    """cosh c = cosh a cosh b - sinh a sinh b cos C, in half-angle form."""
    if not (a > 0 and b > 0):
        raise InvalidInput("hyperbolic sides must be positive")
    C = check_element(C, "C")
    h = math.sinh(0.5 * (a - b)) ** 2 + math.sinh(a) * math.sinh(b) * math.sin(0.5 * C) ** 2
    return 2.0 * math.asinh(math.sqrt(h))


def polar_triangle(t: TriangleData) -> TriangleData:
    return TriangleData(PI - t.A, PI - t.B, PI - t.C, PI - t.a, PI - t.b, PI - t.c)


def _from_lists(sides, angles) -> TriangleData:
    return TriangleData(*sides, *angles)


def _finish_sss(sides, fixed_angles=None) -> TriangleData:
    a, b, c = sides
    angles = [_sss_angle(a, b, c), _sss_angle(b, c, a), _sss_angle(c, a, b)]
    for i, v in (fixed_angles or {}).items():
        angles[i] = v
    return _from_lists(sides, angles)


def _keep(candidates, tol=DEFAULT_TOLERANCES.abs_eps) -> list[TriangleData]:
    """Validate, drop near-degenerate candidates, merge duplicates, sort."""
    out: list[TriangleData] = []
    for build in candidates:
        try:
            t = build()
        except InvalidTriangle:
            continue
        if any(v <= tol or v >= PI - tol for v in t.as_tuple()):
            continue
        if any(t.max_difference(u) < MERGE_TOL for u in out):
            continue
        out.append(t)
    return sorted(out, key=TriangleData.as_tuple)


def _solve_sss(s) -> list[TriangleData]:
    try:
        check_sides(*s)
    except InvalidTriangle:
        return []
    return _keep([lambda: _finish_sss(list(s))])


def _solve_sas(s, g, i, j, k) -> list[TriangleData]:
    # sides i, j known, included angle k known
    sides = list(s)
    sides[k] = _sas_side(s[i], s[j], g[k])
    return _keep([lambda: _finish_sss(sides, {k: g[k]})])


def _solve_ssa(s, g, i, j) -> list[TriangleData]:
    # sides i, j and angle i (opposite side i) known; side k unknown
    k = 3 - i - j
    alpha = math.cos(s[j])
    beta = math.sin(s[j]) * math.cos(g[i])
    R = math.hypot(alpha, beta)
    if R < 1e-14:
        raise DegenerateInput("SSA data admit a continuum of triangles")
    q = math.cos(s[i]) / R
    if abs(q) > 1.0 + 1e-12:
        return []
    phi = math.atan2(beta, alpha)
    delta = math.acos(max(-1.0, min(1.0, q)))
    builds = []
    for sk in ((phi + delta) % (2 * PI), (phi - delta) % (2 * PI)):
        if not 0.0 < sk < PI:
            continue
        sides = list(s)
        sides[k] = sk
        builds.append(lambda sides=sides: _finish_sss(sides, {i: g[i]}))
    return _keep(builds)


def _polar_lists(s, g):
    return [PI - x for x in g], [PI - x for x in s]


def _polar_all(ts: list[TriangleData]) -> list[TriangleData]:
    return sorted((polar_triangle(t) for t in ts), key=TriangleData.as_tuple)


def solve(req: SolveRequest) -> list[TriangleData]:
    """All triangles consistent with three given elements.

    SSS and AAA give at most one triangle, SAS and ASA exactly one, SSA and
    AAS up to two (both members of the ambiguous case are returned).
    """
    known = req.known()
    pattern, sides, angles = _classify(known)
    s = [known.get(n, 0.0) for n in "abc"]
    g = [known.get(n, 0.0) for n in "ABC"]
    if pattern == "SSS":
        out = _solve_sss(s)
    elif pattern == "AAA":
        ps, _ = _polar_lists(s, g)
        out = _polar_all(_solve_sss(ps))
    elif pattern == "SAS":
        i, j = sides
        out = _solve_sas(s, g, i, j, angles[0])
    elif pattern == "ASA":
        i, j = angles
        ps, pg = _polar_lists(s, g)
        out = _polar_all(_solve_sas(ps, pg, i, j, sides[0]))
    elif pattern == "SSA":
        i = angles[0]
        j = sides[0] if sides[1] == i else sides[1]
        out = _solve_ssa(s, g, i, j)
    else:  # AAS
        i = sides[0]
        j = angles[0] if angles[1] == i else angles[1]
        ps, pg = _polar_lists(s, g)
        out = _polar_all(_solve_ssa(ps, pg, i, j))
    if not out:
        raise NoSolution(f"no spherical triangle matches the {pattern} data")
    return out


# --- right triangles (C = pi/2), Napier's relations -------------------------


def _asin_branches(x: float) -> list[float]:
    if abs(x) > 1.0 + 1e-12:
        return []
    t = math.asin(max(-1.0, min(1.0, x)))
    return [t, PI - t]


def _acos(x: float) -> Optional[float]:
    if abs(x) > 1.0 + 1e-12:
        return None
    return math.acos(max(-1.0, min(1.0, x)))


def _atan_mod_pi(y: float, x: float) -> float:
    t = math.atan2(y, x)
    return t + PI if t <= 0.0 else t


def _right_leg_leg(a, b):
    c = math.atan2(
        math.sqrt(math.sin(a) ** 2 + (math.cos(a) * math.sin(b)) ** 2), math.cos(a) * math.cos(b)
    )
    A = math.atan2(math.sin(a), math.cos(a) * math.sin(b))  # tan a = sin b tan A
    B = math.atan2(math.sin(b), math.cos(b) * math.sin(a))  # tan b = sin a tan B
    return [(a, b, c, A, B)]


def _right_leg_hyp(a, c):
    if abs(math.cos(a)) < 1e-15:
        return []
    b = _acos(math.cos(c) / math.cos(a))  # cos c = cos a cos b
    if b is None or math.sin(c) == 0.0:
        return []
    return [
        (a, b, c, A, B)
        for A in _asin_branches(math.sin(a) / math.sin(c))  # sin a = sin c sin A
        for B in _asin_branches(math.sin(b) / math.sin(c))  # sin b = sin c sin B
    ]


def _right_leg_opposite(a, A):
    out = []
    if abs(math.cos(a)) < 1e-15:
        return out
    for c in _asin_branches(math.sin(a) / math.sin(A)):  # sin a = sin c sin A
        b = _acos(math.cos(c) / math.cos(a))
        if b is None or math.sin(c) == 0.0:
            continue
        out += [(a, b, c, A, B) for B in _asin_branches(math.sin(b) / math.sin(c))]
    return out


def _right_leg_adjacent(a, B):
    c = math.atan2(math.sin(a), math.cos(a) * math.cos(B))  # tan a = tan c cos B
    b = math.atan2(math.sin(a) * math.sin(B), math.cos(B))  # tan b = sin a tan B
    A = math.atan2(math.sin(a), math.cos(a) * math.sin(b))  # tan a = sin b tan A
    return [(a, b, c, A, B)]


def _right_hyp_angle(c, A):
    b = _atan_mod_pi(math.sin(c) * math.cos(A), math.cos(c))  # tan b = tan c cos A
    out = []
    for a in _asin_branches(math.sin(c) * math.sin(A)):  # sin a = sin c sin A
        B = math.atan2(math.sin(b), math.cos(b) * math.sin(a))  # tan b = sin a tan B
        out.append((a, b, c, A, B))
    return out


def _right_angle_angle(A, B):
    c = _acos(math.cos(A) * math.cos(B) / (math.sin(A) * math.sin(B)))  # cos c = cot A cot B
    a = _acos(math.cos(A) / math.sin(B))  # cos A = cos a sin B
    b = _acos(math.cos(B) / math.sin(A))  # cos B = cos b sin A
    if None in (a, b, c):
        return []
    return [(a, b, c, A, B)]


_RIGHT_CASES = {
    ("a", "b"): _right_leg_leg,
    ("a", "c"): _right_leg_hyp,
    ("A", "a"): _right_leg_opposite,
    ("B", "a"): _right_leg_adjacent,
    ("A", "c"): _right_hyp_angle,
    ("A", "B"): _right_angle_angle,
}
_SWAP = {"a": "b", "b": "a", "c": "c", "A": "B", "B": "A"}


def solve_right(**givens: float) -> list[TriangleData]:
    """All triangles with C = pi/2 matching two further elements.

    Keyword arguments are two of ``a, b, c, A, B``.
    """
    givens = {k: v for k, v in givens.items() if v is not None}
    if len(givens) != 2 or not set(givens) <= set("abcAB"):
        raise InvalidInput("solve_right needs exactly two of a, b, c, A, B")
    for name, v in givens.items():
        check_element(v, name)
    key = tuple(sorted(givens))
    swapped = key not in _RIGHT_CASES
    if swapped:
        givens = {_SWAP[k]: v for k, v in givens.items()}
        key = tuple(sorted(givens))
    fn = _RIGHT_CASES[key]
    order = {
        _right_leg_leg: ("a", "b"),
        _right_leg_hyp: ("a", "c"),
        _right_leg_opposite: ("a", "A"),
        _right_leg_adjacent: ("a", "B"),
        _right_hyp_angle: ("c", "A"),
        _right_angle_angle: ("A", "B"),
    }[fn]
    raw = fn(*(givens[n] for n in order))
    builds = []
    for a, b, c, A, B in raw:
        if swapped:
            a, b, A, B = b, a, B, A
        builds.append(lambda v=(a, b, c, A, B): TriangleData(v[0], v[1], v[2], v[3], v[4], PI / 2))
    out = _keep(builds)
    if not out:
        raise NoSolution("no right spherical triangle matches the data")
    return out
