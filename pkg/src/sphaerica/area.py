"""Lunes, triangle areas and solid angles on the unit sphere.

Areas are in steradians: on the unit sphere the area of a region equals the
solid angle it subtends at the centre.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InfeasibleCone, InvalidInput, InvalidTriangle, NoSolution
from .triangle import check_sides, solve_right

PI = math.pi


@dataclass(frozen=True)
class SolidAngleResult:
    steradians: float
    method: str

    def __post_init__(self):
        if not 0.0 <= self.steradians < 4 * PI:
            raise InvalidInput(f"solid angle {self.steradians} outside [0, 4 pi)")


def lune_area(theta: float) -> float:
    """Area of a lune with dihedral angle ``theta``; theta = 2 pi is the whole sphere."""
    if not (math.isfinite(theta) and 0.0 < theta <= 2 * PI):
        raise InvalidInput(f"lune angle {theta!r} outside (0, 2 pi]")
    return 2.0 * theta


def girard_area(A: float, B: float, C: float) -> float:
    excess = A + B + C - PI
    if not 0.0 < excess < 2 * PI:
        raise InvalidTriangle(f"angle excess {excess!r} outside (0, 2 pi)")
    return excess


def lhuilier(a: float, b: float, c: float) -> float:
    # tan(E/4)^2 = tan(s/2) tan((s-a)/2) tan((s-b)/2) tan((s-c)/2)
    s = 0.5 * (a + b + c)
    p = math.tan(0.5 * s) * math.tan(0.5 * (s - a)) * math.tan(0.5 * (s - b)) * math.tan(0.5 * (s - c))
    return 4.0 * math.atan(math.sqrt(max(p, 0.0)))


def heron_spherical_area(a: float, b: float, c: float) -> float:
    """Spherical triangle area from its three sides (L'Huilier)."""
    check_sides(a, b, c)
    return lhuilier(a, b, c)


def heron_planar_area(a: float, b: float, c: float) -> float:
    """Euclidean Heron formula, in Kahan's cancellation-free arrangement."""
    if not all(math.isfinite(x) and x > 0 for x in (a, b, c)):
        raise InvalidTriangle("planar sides must be positive")
    z, y, x = sorted((a, b, c))
    if x > y + z:
        raise InvalidTriangle(f"({a}, {b}, {c}) violate the triangle inequality")
    p = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z))
    return 0.25 * math.sqrt(max(p, 0.0))


def _regular_right_triangle(n: int, a: float):
    """Right triangle from the polygon centre to a side midpoint and a vertex.

    Legs: half side (opposite the centre angle pi/n) and the apothem;
    hypotenuse: circumradius. Returns the convex member (circumradius < pi/2).
    """
    try:
        candidates = solve_right(a=0.5 * a, A=PI / n)
    except NoSolution:
        return None
    convex = [t for t in candidates if t.c < PI / 2]
    return convex[0] if convex else None


def solid_angle_regular(n: int, a: float) -> SolidAngleResult:
    """Solid angle of a cone bounded by ``n`` equal, equally inclined face angles ``a``.

    The cone cuts the unit sphere in a regular n-gon of side ``a``; it is
    split into 2n right triangles about its centre.
    """
    if int(n) != n or n < 3:
        raise InvalidInput("n must be an integer >= 3")
    n = int(n)
    if not (math.isfinite(a) and 0.0 < a and n * a < 2 * PI):
        raise InfeasibleCone(f"no convex cone with {n} face angles of {a!r}")
    t = _regular_right_triangle(n, a)
    if t is None:
        raise InfeasibleCone(f"no regular spherical {n}-gon with side {a!r}")
    # each right triangle has angles pi/n, half the polygon angle, pi/2
    area = 2 * n * (t.A + t.B - PI / 2)
    return SolidAngleResult(area, "regular-n-gon")


def excess_solid_angle(a: float, b: float, c: float) -> SolidAngleResult:
    """Solid angle of a trihedral cone with face angles ``a, b, c``."""
    return SolidAngleResult(heron_spherical_area(a, b, c), "excess")


REGULAR_POLYHEDRA = (
    ("tetrahedron", 3, PI / 3),
    ("cube", 3, PI / 2),
    ("octahedron", 4, PI / 3),
    ("dodecahedron", 3, 3 * PI / 5),
    ("icosahedron", 5, PI / 3),
)


def regular_polyhedra_table() -> list[tuple[str, int, float, SolidAngleResult]]:
    return [(name, n, a, solid_angle_regular(n, a)) for name, n, a in REGULAR_POLYHEDRA]
