"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Oracles here are independent of the code under test wherever possible:
brute-force scans, explicit Cartesian polyhedra, vector solid angles,
symmetry and similarity arguments.
"""

import itertools
import json
import math

import numpy as np
import pytest

from conftest import random_triangles, random_unit
from sphaerica import apollonius, area, cevian, lexell, pappus, triangle
from sphaerica.apollonius import Circle2D, Sphere3D
from sphaerica.cli import run
from sphaerica.core import SmallCircle, SpherePoint
from sphaerica.triangle import ELEMENTS, SolveRequest, TriangleData

PI = math.pi
REPORT = []


def record(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    REPORT.append(line)
    print(line)
    assert ok, line


# --- oracles ------------------------------------------------------------------


def ssa_scan_oracle(a, b, A, steps=10**6):
    """Sides c with cos a = cos b cos c + sin b sin c cos A, by scan and bisection."""
    c = np.linspace(0.0, PI, steps + 1)[1:-1]

    def f(x):
        return np.cos(b) * np.cos(x) + np.sin(b) * np.sin(x) * np.cos(A) - np.cos(a)

    v = f(c)
    idx = np.nonzero(np.sign(v[:-1]) != np.sign(v[1:]))[0]
    lo, hi = c[idx], c[idx + 1]
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        left = np.sign(f(lo)) != np.sign(f(mid))
        hi = np.where(left, mid, hi)
        lo = np.where(left, lo, mid)
    return sorted(0.5 * (lo + hi))


def cone_solid_angle(vertex, neighbours):
    """Solid angle at ``vertex`` of the cone over ``neighbours`` (fan of vector solid angles)."""
    dirs = [(n - vertex) / np.linalg.norm(n - vertex) for n in neighbours]
    axis = sum(dirs)
    axis /= np.linalg.norm(axis)
    e1 = dirs[0] - (dirs[0] @ axis) * axis
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    dirs.sort(key=lambda d: math.atan2(d @ e2, d @ e1))
    total = 0.0
    for u, v in zip(dirs, dirs[1:] + dirs[:1]):
        det = abs(float(axis @ np.cross(u, v)))
        total += 2.0 * math.atan2(det, 1.0 + axis @ u + u @ v + v @ axis)
    return total


def polyhedron_vertices(name):
    phi = (1 + math.sqrt(5)) / 2
    signs = [-1.0, 1.0]
    if name == "tetrahedron":
        return np.array([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=float)
    if name == "cube":
        return np.array(list(itertools.product(signs, repeat=3)))
    if name == "octahedron":
        return np.array([s * e for e in np.eye(3) for s in signs])
    cyc = lambda p: [p, (p[1], p[2], p[0]), (p[2], p[0], p[1])]  # noqa: E731
    if name == "icosahedron":
        return np.array([q for s, t in itertools.product(signs, signs) for q in cyc((0.0, s, t * phi))])
    if name == "dodecahedron":
        pts = list(itertools.product(signs, repeat=3))
        pts += [q for s, t in itertools.product(signs, signs) for q in cyc((0.0, s / phi, t * phi))]
        return np.array(pts)
    raise KeyError(name)


def vertex_cone_oracle(name):
    V = polyhedron_vertices(name)
    d = np.linalg.norm(V[1:] - V[0], axis=1)
    edge = d.min()
    neighbours = [V[1:][i] for i in np.nonzero(np.abs(d - edge) < 1e-9)[0]]
    return cone_solid_angle(V[0], neighbours)


# --- criteria -----------------------------------------------------------------


def test_criterion_01_triangle_round_trip():
    worst = 0.0
    missing = 0
    for t in random_triangles(1, 1000):
        d = t.as_dict()
        for keep in itertools.combinations(ELEMENTS, 3):
            sols = triangle.solve(SolveRequest(**{k: d[k] for k in keep}))
            err = min(t.max_difference(s) for s in sols)
            worst = max(worst, err)
            missing += err >= 1e-9
    # SSA against the brute-force scan over the third side
    scan_worst, count_mismatch = 0.0, 0
    for t in random_triangles(12, 100):
        a, b, A = t.a, t.b, t.A
        scanned = ssa_scan_oracle(a, b, A)
        solved = sorted(s.c for s in triangle.solve(SolveRequest(a=a, b=b, A=A)))
        if len(scanned) != len(solved):
            count_mismatch += 1
            continue
        scan_worst = max([scan_worst] + [abs(x - y) for x, y in zip(scanned, solved)])
    ok = missing == 0 and worst < 1e-9 and count_mismatch == 0 and scan_worst < 1e-9
    record(1, ok, f"round-trip worst {worst:.2e} ({missing} misses); SSA scan worst {scan_worst:.2e}, "
           f"count mismatches {count_mismatch}")


def test_criterion_02_polar_duality():
    ts = random_triangles(2, 1000)
    inv = max(triangle.polar_triangle(triangle.polar_triangle(t)).max_difference(t) for t in ts)
    aaa = 0.0
    for t in ts:
        p = triangle.polar_triangle(t)
        via_polar = triangle.solve(SolveRequest(A=t.A, B=t.B, C=t.C))[0]
        direct = triangle.solve(SolveRequest(a=p.a, b=p.b, c=p.c))[0]
        aaa = max(aaa, via_polar.max_difference(triangle.polar_triangle(direct)))
    record(2, inv < 1e-12 and aaa < 1e-10, f"involution {inv:.2e}; AAA vs SSS on polar {aaa:.2e}")


def test_criterion_03_area_cross_agreement():
    ts = random_triangles(3, 1000)
    cross = max(abs(area.girard_area(t.A, t.B, t.C) - area.lhuilier(t.a, t.b, t.c)) for t in ts)
    eps = 1e-3
    rng = np.random.default_rng(3)
    planar = 0.0
    for _ in range(200):
        x = rng.uniform(0.5, 1.5, 3)
        if not (x.sum() - 2 * x.max()) > 0.05:
            continue
        flat = area.heron_planar_area(*x)
        planar = max(planar, abs(area.heron_spherical_area(*(eps * x)) / eps**2 / flat - 1.0))
    record(3, cross < 1e-9 and planar < 1e-5, f"Girard vs L'Huilier {cross:.2e}; planar-limit ratio {planar:.2e}")


def test_criterion_04_solid_angles():
    cube = abs(area.solid_angle_regular(3, PI / 2).steradians - PI / 2)
    tet_value = 3 * math.acos(1 / 3) - PI
    tet = area.solid_angle_regular(3, PI / 3).steradians
    tet_err = max(abs(tet - tet_value), abs(tet - vertex_cone_oracle("tetrahedron")))
    rows = max(abs(r.steradians - vertex_cone_oracle(name)) for name, _, _, r in area.regular_polyhedra_table())
    ok = cube < 1e-12 and tet_err < 1e-9 and rows < 1e-9
    record(4, ok, f"cube {cube:.2e}; tetrahedron {tet_err:.2e}; five polyhedra vs vertex cones {rows:.2e}")


def test_criterion_05_lexell():
    rng = np.random.default_rng(5)
    area_err = antipode = 0.0
    pole_gap = math.inf
    for _ in range(20):
        while True:
            A, B = random_unit(rng), random_unit(rng)
            if 0.3 < math.acos(np.clip(A @ B, -1, 1)) < 2.5:
                break
        S = rng.uniform(0.1, PI)
        locus = lexell.lexell_circle(SpherePoint.from_vector(A), SpherePoint.from_vector(B), S)
        for P in locus.sample(50):
            area_err = max(area_err, abs(lexell.spherical_triangle_area_from_vertices(A, B, P) - S))
        pole = locus.circle.pole.vec
        n = locus.base_pole
        pole_gap = min(pole_gap, math.atan2(np.linalg.norm(np.cross(pole, n)), abs(pole @ n)))
        c = math.cos(locus.circle.radius)
        antipode = max(antipode, abs(-A @ pole - c), abs(-B @ pole - c))
    ok = area_err < 1e-8 and pole_gap > 1e-3 and antipode < 1e-10
    record(5, ok, f"locus area {area_err:.2e}; min pole separation {pole_gap:.2e}; antipodes {antipode:.2e}")


def _forward_configs(geometry, rng, n):
    out = []
    while len(out) < n:
        if geometry == "euclidean":
            V = rng.uniform(-1, 1, (3, 2))
            w = rng.dirichlet(np.ones(3))
            O = w @ V
        elif geometry == "spherical":
            ang = rng.uniform(0.1, 0.6, 3)
            az = rng.uniform(0, 2 * PI, 3)
            V = np.array([[math.sin(t) * math.cos(p), math.sin(t) * math.sin(p), math.cos(t)] for t, p in zip(ang, az)])
            w = rng.dirichlet(np.ones(3))
            O = w @ V
            O /= np.linalg.norm(O)
        else:
            K = rng.uniform(-0.6, 0.6, (3, 2))  # Klein disk points
            w = rng.dirichlet(np.ones(3))
            Ok = w @ K
            lift = lambda k: np.array([k[0], k[1], 1.0]) / math.sqrt(1 - k @ k)  # noqa: E731
            V, O = np.array([lift(k) for k in K]), lift(Ok)
        try:
            cfg = cevian.cevian_config(geometry, *V, O)
            cfg.check()
        except Exception:
            continue
        if min(cfg.lengths) < 1e-3:
            continue
        out.append(cfg)
    return out


def test_criterion_06_cevian_identity():
    rng = np.random.default_rng(6)
    gap = 0.0
    perturbed = math.inf
    for g in cevian.GEOMETRIES:
        for cfg in _forward_configs(g, rng, 500):
            gap = max(gap, abs(cevian.cevian_identity_gap(cfg)))
            # push foot a off its side along the cevian: the cevians no longer close up
            L = list(cfg.lengths)
            L[1] *= 1.25
            perturbed = min(perturbed, abs(cevian.gap_from_lengths(L, g)))
    # octant triangle with its medians
    E = np.eye(3)
    cfg = cevian.cevian_config("spherical", E[0], E[1], E[2], np.ones(3) / math.sqrt(3))
    L = cfg.lengths
    octant = max(abs(math.tan(L[2 * i]) / math.tan(L[2 * i + 1]) - 2.0) for i in range(3))
    # 3-4-5 incenter: build lengths forward, reconstruct, compare the triangle
    A, B, C = np.array([0.0, 0.0]), np.array([4.0, 0.0]), np.array([0.0, 3.0])
    I = (5 * A + 3 * B + 4 * C) / 12.0  # side lengths opposite A, B, C are 5, 3, 4
    fwd = cevian.cevian_config("euclidean", A, B, C, I)
    rec = cevian.construct_triangle_from_cevians(fwd.lengths, "euclidean")
    sides = sorted(np.linalg.norm(p - q) for p, q in ((rec.A, rec.B), (rec.B, rec.C), (rec.A, rec.C)))
    round_trip = max(abs(s - t) for s, t in zip(sides, (3.0, 4.0, 5.0)))
    ok = gap < 1e-8 and perturbed >= 0.01 and octant < 1e-9 and round_trip < 1e-8
    record(6, ok, f"forward gap {gap:.2e}; perturbed min {perturbed:.3f}; octant {octant:.2e}; "
           f"3-4-5 converse {round_trip:.2e}")


def _planted_problem(rng):
    c = Circle2D(*rng.normal(size=2), rng.uniform(0.5, 2))
    ang = rng.uniform(0, 2 * PI, 3)
    V = [c.center + c.r * np.array([math.cos(a), math.sin(a)]) for a in ang]
    P = []
    for i in range(3):
        p, q = V[(i + 1) % 3], V[(i + 2) % 3]
        for _ in range(1000):
            X = p + rng.uniform(-0.5, 1.5) * (q - p)
            if abs(np.linalg.norm(X - c.center) - c.r) > 0.05 * c.r:
                break
        P.append(X)
    return pappus.InscribedTriangleProblem(c, tuple(P)), V


def _spherical_vs_planar(eps):
    """Small-circle carrier of radius eps about +z against its orthographic shadow."""
    pts2 = [np.array([0.3, 1.7]), np.array([-1.6, 0.2]), np.array([1.1, -1.3])]
    lift = lambda x: np.array([eps * x[0], eps * x[1], math.sqrt(1 - eps**2 * (x @ x))])  # noqa: E731
    sph = pappus.InscribedTriangleProblem(SmallCircle(SpherePoint(0.0, 0.0, 1.0), eps), tuple(lift(x) for x in pts2))
    flat = pappus.InscribedTriangleProblem(
        Circle2D(0.0, 0.0, math.sin(eps)), tuple(lift(x)[:2] for x in pts2)
    )
    s_sol = pappus.pappus_inscribed_triangle(sph)
    p_sol = pappus.pappus_inscribed_triangle(flat)
    if len(s_sol) != len(p_sol):
        return math.inf
    worst = 0.0
    for s in s_sol:
        proj = [v[:2] for v in s.vertices]
        gap = min(max(np.linalg.norm(u - w) for u, w in zip(proj, p.vertices)) for p in p_sol)
        worst = max(worst, gap / eps)
    return worst


def test_criterion_07_pappus():
    rng = np.random.default_rng(7)
    recovered, gate = 0.0, 0.0
    for _ in range(20):
        prob, V = _planted_problem(rng)
        sols = pappus.pappus_inscribed_triangle(prob)
        recovered = max(recovered, min(max(np.linalg.norm(u - v) for u, v in zip(s.vertices, V)) for s in sols))
        gate = max([gate] + [max(pappus.incidence_residuals(prob, s.vertices)) for s in sols])
    # reflection symmetry about the x axis
    sym = 0.0
    for xs in ((-3.0, -2.0, 4.0), (0.2, 0.5, 3.0), (-2.0, 3.0, 5.0)):
        prob = pappus.InscribedTriangleProblem(Circle2D(0.4, 0.0, 1.3), tuple((x, 0.0) for x in xs))
        sols = pappus.pappus_inscribed_triangle(prob)
        flip = np.array([1.0, -1.0])
        for s in sols:
            mirrored = [v * flip for v in s.vertices]
            sym = max(sym, min(max(np.linalg.norm(u - w) for u, w in zip(mirrored, o.vertices)) for o in sols))
    eps = 1e-2
    small = _spherical_vs_planar(eps)
    ok = recovered < 1e-8 and gate < 1e-8 and sym < 1e-8 and small < 10 * eps**2
    record(7, ok, f"planted {recovered:.2e}; residual gate {gate:.2e}; mirror {sym:.2e}; "
           f"sphere vs plane {small:.2e} (eps^2 = {eps**2:.0e})")


def test_criterion_08_apollonius():
    s3 = math.sqrt(3)
    unit = [Circle2D(0, 0, 1), Circle2D(2, 0, 1), Circle2D(1, s3, 1)]
    radii = [c.r for c, _ in apollonius.apollonius_circles(*unit)]
    descartes = max(
        min(abs(r - x) for r in radii) for x in (2 / s3 - 1, 2 / s3 + 1)
    )  # curvatures 3 +- 2 sqrt 3
    spheres = [Sphere3D(*v, 1.0) for v in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))]
    spheres = [Sphere3D(s.cx / math.sqrt(2), s.cy / math.sqrt(2), s.cz / math.sqrt(2), 1.0) for s in spheres]
    soddy = min(abs(s.r - (math.sqrt(1.5) - 1)) for s, _ in apollonius.tangent_spheres(*spheres))
    rng = np.random.default_rng(8)
    residual, covariance = 0.0, 0.0
    for _ in range(50):
        cs = [Circle2D(*rng.normal(size=2) * 3, rng.uniform(0.2, 1.5)) for _ in range(3)]
        sols = apollonius.apollonius_circles(*cs)
        residual = max([residual] + [apollonius.tangency_residual(s, cs, sg) for s, sg in sols])
        big = [Circle2D(2 * c.cx, 2 * c.cy, 2 * c.r) for c in cs]
        sols2 = apollonius.apollonius_circles(*big)
        if len(sols2) != len(sols):
            covariance = math.inf
            continue
        for (s, _), (t, _) in zip(sols, sols2):
            scale = max(1.0, abs(t.r), *np.abs(t.center))
            covariance = max(covariance, max(abs(2 * s.r - t.r), *np.abs(2 * s.center - t.center)) / scale)
    for _ in range(20):
        ss = [Sphere3D(*rng.normal(size=3) * 3, rng.uniform(0.2, 1.5)) for _ in range(4)]
        try:
            sols = apollonius.tangent_spheres(*ss)
        except apollonius.NoSolution:
            continue
        residual = max([residual] + [apollonius.tangency_residual(s, ss, sg) for s, sg in sols])
    ok = descartes < 1e-9 and soddy < 1e-9 and residual < 1e-9 and covariance < 1e-10
    record(8, ok, f"Descartes {descartes:.2e}; Soddy {soddy:.2e}; residual {residual:.2e}; "
           f"similarity {covariance:.2e}")


def test_criterion_09_quadrilateral():
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(1000):
        scale = 10 ** rng.uniform(-3, 3)
        P = rng.normal(size=(4, 2)) * scale
        worst = max(worst, abs(cevian.quadrilateral_identity_gap(*P)) / scale**2)
    record(9, worst < 1e-10, f"worst gap / scale^2 {worst:.2e}")


SUBCOMMANDS = {"solve", "area", "solid-angle", "lexell", "cevian", "pappus", "apollonius2", "apollonius3", "geodist"}


def test_criterion_10_cli(golden_dir):
    stable = True
    for path in sorted(golden_dir.glob("*.json")):
        case = json.loads(path.read_text())
        stdin = json.dumps(case["request"]).encode()
        first = run(case["argv"], _Stream(stdin))
        second = run(case["argv"], _Stream(stdin))
        expected = (case["exit"], path.with_suffix(".out").read_bytes())
        stable &= first == second == expected
    covered = {json.loads(p.read_text())["argv"][0] for p in golden_dir.glob("*.json")}
    codes = {
        "ok": run(["solve", "--json"], _Stream(b'{"a": 1, "b": 1, "c": 1}'))[0],
        "invalid": run(["solve", "--json"], _Stream(b'{"a": 1, "b":'))[0],
        "no_solution": run(["solid-angle", "--json", "--n", "3", "--a", "2.5"])[0],
        "degenerate": run(["lexell", "--json"], _Stream(b'{"A": [1, 0, 0], "B": [1, 0, 0], "area": 1}'))[0],
    }
    contract = codes == {"ok": 0, "invalid": 2, "no_solution": 3, "degenerate": 4}
    dual = 0.0
    for t in random_triangles(10, 20):
        d = t.as_dict()
        keep = ("a", "b", "C")
        rad = json.loads(run(["solve", "--json"], _Stream(json.dumps({k: d[k] for k in keep}).encode()))[1])
        deg_req = {k: math.degrees(d[k]) for k in keep}
        deg = json.loads(run(["solve", "--json", "--degrees"], _Stream(json.dumps(deg_req).encode()))[1])
        for r, g in zip(rad["results"], deg["results"]):
            dual = max(dual, max(abs(r[k] - math.radians(g[k])) for k in ELEMENTS))
    ok = stable and covered == SUBCOMMANDS and contract and dual < 1e-12
    record(10, ok, f"golden byte-stable {stable} over {len(covered)} subcommands; exit codes {codes}; "
           f"degrees/radians {dual:.2e}")


class _Stream:
    def __init__(self, data):
        self.data = data

    def read(self):
        return self.data


@pytest.fixture
def golden_dir():
    from pathlib import Path

    return Path(__file__).parent / "golden"
