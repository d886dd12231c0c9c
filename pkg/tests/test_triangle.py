import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_triangles
from sphaerica import triangle
from sphaerica.errors import DegenerateInput, InvalidInput, InvalidTriangle, NoSolution
from sphaerica.triangle import ELEMENTS, SolveRequest, TriangleData

PI = math.pi
element = st.floats(0.05, PI - 0.05)


def mayer_angle(a, b, c):
    """arccos form of the SSS rule; angle opposite a."""
    return math.acos((math.cos(a) - math.cos(b) * math.cos(c)) / (math.sin(b) * math.sin(c)))


def test_side_from_sas_examples():
    assert triangle.side_from_sas(PI / 2, PI / 2, PI / 2) == pytest.approx(PI / 2, abs=1e-15)
    assert triangle.side_from_sas(PI / 2, PI / 2, 0.7) == pytest.approx(0.7, abs=1e-15)
    with pytest.raises(DegenerateInput):
        triangle.side_from_sas(0.5, 0.5, 1e-14)


def test_side_from_sas_planar_limit():
    # the curvature correction is of relative size a^2, so agreement is to O(a^2)
    a = b = 1e-3
    C = 1.0
    flat = math.sqrt(a * a + b * b - 2 * a * b * math.cos(C))
    rel = abs(triangle.side_from_sas(a, b, C) / flat - 1)
    assert rel < a * a
    # and the correction is the expected one: spherical sides are shorter
    assert triangle.side_from_sas(a, b, C) < flat


def test_angle_from_sss_examples():
    assert triangle.angle_from_sss(PI / 2, PI / 2, PI / 2) == pytest.approx(PI / 2, abs=1e-15)
    assert triangle.angle_from_sss(PI / 3, PI / 3, PI / 3) == pytest.approx(math.acos(1 / 3), abs=1e-15)
    with pytest.raises(InvalidTriangle):
        triangle.angle_from_sss(2.0, 0.5, 0.5)


def test_sas_sss_round_trip():
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(1000):
        a, b, C = rng.uniform(0.05, PI - 0.05, 3)
        try:
            c = triangle.side_from_sas(a, b, C)
        except DegenerateInput:
            continue
        worst = max(worst, abs(triangle.angle_from_sss(c, a, b) - C))
    assert worst < 1e-10


def test_sss_against_mayer_oracle():
    for t in random_triangles(4, 300):
        assert triangle.angle_from_sss(t.a, t.b, t.c) == pytest.approx(mayer_angle(t.a, t.b, t.c), abs=1e-9)


def test_sas_expanded():
    assert triangle.sas_expanded(PI / 3, PI / 3, PI / 2) == pytest.approx(0.25, abs=1e-15)
    assert triangle.sas_expanded(PI / 2, PI / 2, 0.4) == pytest.approx(math.cos(0.4), abs=1e-15)
    rng = np.random.default_rng(2)
    for _ in range(1000):
        x, y, A = rng.uniform(0.01, PI - 0.01, 3)
        assert abs(triangle.sas_expanded(x, y, A) - math.cos(triangle._sas_side(x, y, A))) < 1e-12


def test_polar_triangle_examples():
    octant = TriangleData(*[PI / 2] * 6)
    assert triangle.polar_triangle(octant).max_difference(octant) == 0.0
    A = math.acos(1 / 3)
    eq = TriangleData(PI / 3, PI / 3, PI / 3, A, A, A)
    p = triangle.polar_triangle(eq)
    assert np.allclose(p.as_tuple(), [PI - A] * 3 + [2 * PI / 3] * 3, atol=1e-15)


def test_polar_sss_duality_rule():
    for t in random_triangles(5, 200):
        p = triangle.polar_triangle(t)
        assert PI - triangle.angle_from_sss(p.a, p.b, p.c) == pytest.approx(t.a, abs=1e-10)


def test_triangle_data_validation():
    with pytest.raises(InvalidTriangle):
        TriangleData(0.5, 0.5, 0.5, 1.0, 1.0, 1.0)  # inconsistent
    with pytest.raises(InvalidTriangle):
        TriangleData(0.0, 0.5, 0.5, 1.0, 1.0, 1.0)


def test_solve_request_validation():
    with pytest.raises(InvalidInput):
        SolveRequest(a=1.0, b=1.0)
    with pytest.raises(InvalidInput):
        SolveRequest(a=1.0, b=1.0, c=1.0, A=1.0)
    with pytest.raises(InvalidInput):
        SolveRequest(a=1.0, b=1.0, c=4.0)
    assert SolveRequest(a=1, b=1, C=1).pattern == "SAS"
    assert SolveRequest(a=1, b=1, A=1).pattern == "SSA"
    assert SolveRequest(A=1, B=1, c=1).pattern == "ASA"
    assert SolveRequest(A=1, B=1, a=1).pattern == "AAS"


def test_solve_examples():
    (octant,) = triangle.solve(SolveRequest(a=PI / 2, b=PI / 2, c=PI / 2))
    assert np.allclose(octant.as_tuple(), [PI / 2] * 6, atol=1e-15)
    (aaa,) = triangle.solve(SolveRequest(A=2 * PI / 3, B=2 * PI / 3, C=2 * PI / 3))
    side = PI - math.acos(1 / 3)
    assert np.allclose([aaa.a, aaa.b, aaa.c], [side] * 3, atol=1e-10)
    with pytest.raises(NoSolution):
        triangle.solve(SolveRequest(a=2.0, b=0.3, c=0.3))


def test_ssa_example_against_scan():
    a, b, A = 0.8, 0.6, 0.9
    # vertex A at the pole, C at distance b along one meridian, B at distance x
    # along the meridian at angle A; scan x for |BC| = a
    Cv = np.array([math.sin(b), 0.0, math.cos(b)])
    x = np.linspace(0, PI, 10**6 + 1)[1:-1]
    Bv = np.stack([np.sin(x) * math.cos(A), np.sin(x) * math.sin(A), np.cos(x)], axis=1)
    f = Bv @ Cv - math.cos(a)
    idx = np.nonzero(np.diff(np.sign(f)))[0]
    roots = []
    for i in idx:
        lo, hi = x[i], x[i + 1]
        g = lambda t: math.sin(t) * math.cos(A) * Cv[0] + math.cos(t) * Cv[2] - math.cos(a)  # noqa: E731
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            lo, hi = (lo, mid) if np.sign(g(lo)) != np.sign(g(mid)) else (mid, hi)
        roots.append(0.5 * (lo + hi))
    Av = np.array([0.0, 0.0, 1.0])
    scanned = []
    for c in roots:
        P = np.array([math.sin(c) * math.cos(A), math.sin(c) * math.sin(A), math.cos(c)])
        scanned.append(TriangleData.from_vertices(Av, P, Cv))
    sols = triangle.solve(SolveRequest(a=a, b=b, A=A))
    assert len(scanned) == len(sols)
    for s, t in zip(sorted(scanned, key=TriangleData.as_tuple), sols):
        assert s.max_difference(t) < 1e-9


def test_hyperbolic_sas():
    assert triangle.hyperbolic_side_from_sas(1.0, 1.0, PI / 2) == pytest.approx(math.acosh(math.cosh(1) ** 2), abs=1e-14)
    a = b = 1e-3
    C = 1.0
    flat = math.sqrt(a * a + b * b - 2 * a * b * math.cos(C))
    assert abs(triangle.hyperbolic_side_from_sas(a, b, C) / flat - 1) < a * a


def test_curvature_brackets_planar():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        a, b = rng.uniform(1e-4, 1e-2, 2)
        C = rng.uniform(0.05, PI - 0.05)
        flat = math.sqrt(a * a + b * b - 2 * a * b * math.cos(C))
        assert triangle._sas_side(a, b, C) <= flat * (1 + 1e-15)
        assert flat <= triangle.hyperbolic_side_from_sas(a, b, C) * (1 + 1e-15)


def test_sine_rule_on_outputs():
    for t in random_triangles(6, 200):
        d = t.as_dict()
        for keep in (("a", "b", "A"), ("A", "B", "a"), ("a", "b", "C")):
            for s in triangle.solve(SolveRequest(**{k: d[k] for k in keep})):
                k = math.sin(s.A) / math.sin(s.a)
                assert math.sin(s.B) / math.sin(s.b) == pytest.approx(k, rel=1e-9)
                assert math.sin(s.C) / math.sin(s.c) == pytest.approx(k, rel=1e-9)


def test_solve_right_examples():
    (octant,) = triangle.solve_right(a=PI / 2, b=PI / 2)
    assert np.allclose(octant.as_tuple(), [PI / 2] * 6, atol=1e-12)
    sols = triangle.solve_right(c=PI / 3, A=PI / 4)
    assert any(abs(s.a - math.asin(math.sin(PI / 3) * math.sin(PI / 4))) < 1e-12 for s in sols)
    with pytest.raises(NoSolution):
        triangle.solve_right(a=1.5, A=0.1)
    with pytest.raises(InvalidInput):
        triangle.solve_right(a=1.0)


def test_solve_right_matches_general_solver():
    rng = np.random.default_rng(7)
    checked = 0
    while checked < 200:
        a, b = rng.uniform(0.1, PI - 0.1, 2)
        (t,) = triangle.solve(SolveRequest(a=a, b=b, C=PI / 2))
        d = t.as_dict()
        for pair in itertools.combinations(("a", "b", "c", "A", "B"), 2):
            right = triangle.solve_right(**{k: d[k] for k in pair})
            general = triangle.solve(SolveRequest(C=PI / 2, **{k: d[k] for k in pair}))
            assert len(right) == len(general)
            for r, g in zip(right, general):
                assert r.max_difference(g) < 1e-9
        checked += 1


@settings(max_examples=300, deadline=None)
@given(element, element, element)
def test_sas_solutions_are_valid(a, b, C):
    try:
        sols = triangle.solve(SolveRequest(a=a, b=b, C=C))
    except (NoSolution, InvalidTriangle, DegenerateInput):
        return
    assert len(sols) == 1
    assert max(sols[0].residuals()) <= 1e-9


@settings(max_examples=300, deadline=None)
@given(element, element, element)
def test_ssa_outputs_match_givens(a, b, A):
    try:
        sols = triangle.solve(SolveRequest(a=a, b=b, A=A))
    except NoSolution:
        return
    assert 1 <= len(sols) <= 2
    for s in sols:
        assert (s.a, s.b, s.A) == pytest.approx((a, b, A), abs=1e-9)


def test_every_mask_round_trips():
    for t in random_triangles(8, 50):
        d = t.as_dict()
        for keep in itertools.combinations(ELEMENTS, 3):
            sols = triangle.solve(SolveRequest(**{k: d[k] for k in keep}))
            assert min(t.max_difference(s) for s in sols) < 1e-9
