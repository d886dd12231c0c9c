"""Batch command-line front end: JSON request in, JSON response out.

    sphaerica <subcommand> [--json] [--degrees] [--svg PATH] [--input FILE] [--tolerance EPS]

The request is read from ``--input`` or standard input, either as a bare
payload or as an envelope ``{"command": ..., "payload": {...}, "units": ...}``.
Some subcommands also accept their scalars as flags. Exit codes: 0 ok,
2 invalid input, 3 no solution, 4 degenerate configuration.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from importlib import resources

import jsonschema
import numpy as np

from . import apollonius, area, cevian, geo, lexell, pappus, triangle
from .core import DEFAULT_TOLERANCES, SmallCircle, SpherePoint, Tolerances
from .errors import SphaericaError
from .svg import ApolloniusFigure, PappusFigure, emit_svg

log = logging.getLogger("sphaerica")

COMMANDS = (
    "solve", "area", "solid-angle", "lexell", "cevian", "pappus", "apollonius2", "apollonius3", "geodist"
)
EXIT_CODES = {"ok": 0, "invalid_input": 2, "no_solution": 3, "degenerate": 4}
SVG_COMMANDS = ("lexell", "cevian", "pappus", "apollonius2", "apollonius3")


@dataclass
class ResponseEnvelope:
    status: str
    results: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "results": self.results,
            "residuals": self.residuals,
            "diagnostics": self.diagnostics,
        }


def dumps(value) -> str:
    """Canonical JSON: sorted keys, floats with 17 significant digits, non-finite as null."""
    if isinstance(value, dict):
        items = (json.dumps(str(k)) + ": " + dumps(v) for k, v in sorted(value.items()))
        return "{" + ", ".join(items) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in value) + "]"
    if isinstance(value, (bool, np.bool_)) or value is None:
        return json.dumps(None if value is None else bool(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if not math.isfinite(x):
            return "null"
        s = "%.17g" % x
        return s if any(ch in s for ch in ".en") else s + ".0"
    return json.dumps(value)


class _Units:
    def __init__(self, degrees: bool):
        self.degrees = degrees

    def inp(self, x):
        return math.radians(x) if self.degrees else float(x)

    def out(self, x):
        return math.degrees(x) if self.degrees else float(x)


# --- handlers: (payload, units, tol) -> (results, residuals, figure) --------


def _solve(p, u, tol):
    known = {k: u.inp(p[k]) for k in "abcABC" if k in p}
    if p.get("right"):
        sols = triangle.solve_right(**known)
    else:
        sols = triangle.solve(triangle.SolveRequest(**known))
    results = [{k: u.out(v) for k, v in t.as_dict().items()} for t in sols]
    return results, [max(t.residuals()) for t in sols], None


def _area(p, u, tol):
    if "sides" in p:
        s = [u.inp(x) for x in p["sides"]]
        value = area.lhuilier(*s)
        angles = triangle.solve(triangle.SolveRequest(a=s[0], b=s[1], c=s[2]))[0]
        check, method = area.girard_area(angles.A, angles.B, angles.C), "lhuilier"
    elif "angles" in p:
        g = [u.inp(x) for x in p["angles"]]
        value = area.girard_area(*g)
        t = triangle.solve(triangle.SolveRequest(A=g[0], B=g[1], C=g[2]))[0]
        check, method = area.lhuilier(t.a, t.b, t.c), "girard"
    else:
        value = area.lune_area(u.inp(p["lune"]))
        check, method = value, "lune"
    return [{"steradians": value, "method": method}], [abs(value - check)], None


def _solid_angle(p, u, tol):
    if p.get("polyhedra"):
        rows = area.regular_polyhedra_table()
        results = [{"name": name, "n": n, "a": u.out(a), "steradians": r.steradians} for name, n, a, r in rows]
        return results, [0.0] * len(results), None
    if "faces" in p:
        r = area.excess_solid_angle(*(u.inp(x) for x in p["faces"]))
        return [{"steradians": r.steradians, "method": r.method}], [0.0], None
    n, a = p["n"], u.inp(p["a"])
    r = area.solid_angle_regular(n, a)
    residual = abs(r.steradians - area.excess_solid_angle(a, a, a).steradians) if n == 3 else 0.0
    return [{"steradians": r.steradians, "method": r.method}], [residual], None


def _lexell(p, u, tol):
    A, B = SpherePoint.from_vector(p["A"]), SpherePoint.from_vector(p["B"])
    S = float(p["area"])
    locus = lexell.lexell_circle(A, B, S)
    residual = max(abs(lexell.spherical_triangle_area_from_vertices(A, B, x) - S) for x in locus.sample(16))
    lo, hi = locus.arc()
    result = {
        "pole": list(locus.circle.pole.vec),
        "radius": u.out(locus.circle.radius),
        "arc": [u.out(lo), u.out(hi)],
        "apices": [list(x.vec) for x in locus.apices],
    }
    return [result], [residual], locus


def _cevian(p, u, tol):
    g = p["geometry"]
    scale = u.inp if g == "spherical" else float
    unscale = u.out if g == "spherical" else float
    if "lengths" in p:
        cfg = cevian.construct_triangle_from_cevians([scale(x) for x in p["lengths"]], g, tol.residual_eps)
    else:
        cfg = cevian.cevian_config(g, *(p[k] for k in "ABCO"))
    gap = cevian.cevian_identity_gap(cfg, tol.residual_eps)
    d = cfg.to_dict()
    d["lengths"] = [unscale(x) for x in d["lengths"]]
    d["gap"] = gap
    d["signs"] = list(cfg.signs())
    return [d], [max(cfg.residuals().values())], cfg


def _pappus(p, u, tol):
    c = p["carrier"]
    if "r" in c:
        carrier = apollonius.Circle2D(c["cx"], c["cy"], c["r"])
    else:
        carrier = SmallCircle(SpherePoint.from_vector(c["pole"]), u.inp(c["radius"]))
    prob = pappus.InscribedTriangleProblem(carrier, tuple(p["points"]))
    sols = pappus.pappus_inscribed_triangle(prob, tol)
    results = [
        {"vertices": [list(map(float, v)) for v in s.vertices], "parameters": [u.out(t) for t in s.parameters]}
        for s in sols
    ]
    return results, [s.residual for s in sols], PappusFigure(prob, tuple(sols))


def _apollonius(p, u, tol, three_d):
    signs = p.get("signs", apollonius.ALL)
    if three_d:
        givens = [apollonius.Sphere3D(*s) for s in p["spheres"]]
        report = apollonius.solve_spheres(*givens, signs=signs)
        keys = ("cx", "cy", "cz", "r")
    else:
        givens = [apollonius.Circle2D(*c) for c in p["circles"]]
        report = apollonius.solve_circles(*givens, signs=signs)
        keys = ("cx", "cy", "r")
    notes = [f"rank-deficient tangency system for signs {list(case)}" for case in report.degenerate]
    sols = apollonius.finish(report, len(apollonius.sign_cases(len(givens), signs)))
    results = [{**{k: getattr(s, k) for k in keys}, "signs": list(sg)} for s, sg in sols]
    residuals = [apollonius.tangency_residual(s, givens, sg) for s, sg in sols]
    return results, residuals, ApolloniusFigure(tuple(givens), tuple(s for s, _ in sols)), notes


def _geodist(p, u, tol):
    def coord(d):
        if u.degrees:
            return geo.GeoCoordinate.from_degrees(d["lat"], d["lon"])
        return geo.GeoCoordinate(d["lat"], d["lon"])

    a, b = coord(p["p"]), coord(p["q"])
    angle, km = geo.geodesic_distance(a, b, float(p.get("radius_km", geo.EARTH_RADIUS_KM)))
    try:
        bearing = u.out(geo.initial_bearing(a, b))
    except SphaericaError:
        bearing = None
    v, w = a.to_point().vec, b.to_point().vec
    check = math.atan2(float(np.linalg.norm(np.cross(v, w))), float(v @ w))
    result = {"central_angle": u.out(angle), "length_km": km, "initial_bearing": bearing}
    return [result], [abs(angle - check)], None


HANDLERS = {
    "solve": _solve,
    "area": _area,
    "solid-angle": _solid_angle,
    "lexell": _lexell,
    "cevian": _cevian,
    "pappus": _pappus,
    "apollonius2": lambda p, u, t: _apollonius(p, u, t, False),
    "apollonius3": lambda p, u, t: _apollonius(p, u, t, True),
    "geodist": _geodist,
}

# scalar flags that may stand in for payload fields
FLAGS = {
    "solve": [(k, float) for k in "abcABC"],
    "solid-angle": [("n", int), ("a", float)],
    "area": [("lune", float)],
    "geodist": [("lat1", float), ("lon1", float), ("lat2", float), ("lon2", float), ("radius-km", float)],
}


def load_schema(command: str) -> dict:
    text = resources.files("sphaerica").joinpath("schemas", f"{command}.json").read_text()
    return json.loads(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sphaerica", description="Spherical geometry solvers.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--json", action="store_true", help="write the response envelope as JSON")
        sp.add_argument("--degrees", action="store_true", help="angles in and out are in degrees")
        sp.add_argument("--input", metavar="FILE", help="request file (default: standard input)")
        sp.add_argument("--tolerance", type=float, metavar="EPS", help="residual tolerance")
        if name in SVG_COMMANDS:
            sp.add_argument("--svg", metavar="PATH", help="write a diagram")
            sp.add_argument("--viewpoint", type=float, nargs=3, default=(0.0, 0.0, 1.0), help="projection direction")
        for flag, kind in FLAGS.get(name, ()):
            sp.add_argument("--" + flag, dest="flag_" + flag.replace("-", "_"), type=kind)
    return parser


def _flag_payload(args) -> dict:
    given = {k[5:]: v for k, v in vars(args).items() if k.startswith("flag_") and v is not None}
    if args.command == "geodist" and given:
        out = {}
        if "lat1" in given or "lon1" in given:
            out["p"] = {"lat": given.get("lat1", 0.0), "lon": given.get("lon1", 0.0)}
        if "lat2" in given or "lon2" in given:
            out["q"] = {"lat": given.get("lat2", 0.0), "lon": given.get("lon2", 0.0)}
        if "radius_km" in given:
            out["radius_km"] = given["radius_km"]
        return out
    return given


def _tolerance(args) -> Tolerances:
    value = args.tolerance
    if value is None and os.environ.get("SPHAERICA_TOLERANCE"):
        value = float(os.environ["SPHAERICA_TOLERANCE"])
    if value is None:
        return DEFAULT_TOLERANCES
    return Tolerances(DEFAULT_TOLERANCES.abs_eps, value, DEFAULT_TOLERANCES.root_scan_steps)


def _read_request(args, stdin) -> tuple[dict, bool]:
    flags = _flag_payload(args)
    if args.input:
        try:
            with open(args.input, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise _Fail("invalid_input", f"cannot read {args.input}: {exc.strerror}")
    elif flags:
        raw = b"{}"
    else:
        raw = stdin.read() if stdin is not None else b""
    try:
        doc = json.loads(raw.decode("utf-8") if isinstance(raw, bytes) else raw)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise _Fail("invalid_input", f"malformed JSON: {exc}")
    if not isinstance(doc, dict):
        raise _Fail("invalid_input", "request must be a JSON object")
    if "payload" in doc:
        if doc.get("command", args.command) != args.command:
            raise _Fail("invalid_input", f"envelope command {doc.get('command')!r} does not match {args.command!r}")
        payload, units = doc["payload"], doc.get("units")
        if not isinstance(payload, dict):
            raise _Fail("invalid_input", "payload must be a JSON object")
    else:
        payload, units = dict(doc), doc.get("units")
    payload.pop("units", None)
    payload.update(flags)
    if units not in (None, "radians", "degrees"):
        raise _Fail("invalid_input", f"unknown units {units!r}")
    return payload, args.degrees or units == "degrees"


class _Fail(Exception):
    def __init__(self, status, message):
        super().__init__(message)
        self.status = status


def _execute(args, stdin) -> tuple[ResponseEnvelope, object]:
    try:
        tol = _tolerance(args)
        payload, degrees = _read_request(args, stdin)
        try:
            jsonschema.validate(payload, load_schema(args.command))
        except jsonschema.ValidationError as exc:
            raise _Fail("invalid_input", f"payload does not match the {args.command} schema: {exc.message}")
        outcome = HANDLERS[args.command](payload, _Units(degrees), tol)
        results, residuals, figure = outcome[:3]
        notes = list(outcome[3]) if len(outcome) > 3 else []
    except _Fail as exc:
        return ResponseEnvelope(exc.status, diagnostics=[str(exc)]), None
    except SphaericaError as exc:
        return ResponseEnvelope(exc.status, diagnostics=[f"{type(exc).__name__}: {exc}"]), None
    except (ValueError, TypeError) as exc:
        return ResponseEnvelope("invalid_input", diagnostics=[f"{type(exc).__name__}: {exc}"]), None

    keep = [i for i, r in enumerate(residuals) if r < tol.residual_eps]
    diagnostics = notes + [f"dropped result {i}: residual {residuals[i]:.3g}" for i in range(len(results)) if i not in keep]
    results, residuals = [results[i] for i in keep], [residuals[i] for i in keep]
    if not results:
        return ResponseEnvelope("no_solution", diagnostics=diagnostics or ["no results"]), None
    return ResponseEnvelope("ok", results, residuals, diagnostics), figure


def _text(env: ResponseEnvelope) -> str:
    lines = [f"status: {env.status}"]
    for i, (res, r) in enumerate(zip(env.results, env.residuals)):
        lines.append(f"[{i}] residual {r:.3g}")
        for k, v in sorted(res.items()):
            lines.append(f"  {k}: {v}")
    return "\n".join(lines) + "\n"


def run(argv, stdin=None) -> tuple[int, bytes]:
    """Run one command; returns (exit code, standard output bytes)."""
    args = build_parser().parse_args(argv)
    env, figure = _execute(args, stdin)
    svg_path = getattr(args, "svg", None)
    if svg_path and figure is not None:
        try:
            emit_svg(figure, svg_path, args.viewpoint)
        except SphaericaError as exc:
            env = ResponseEnvelope(exc.status, diagnostics=[f"{type(exc).__name__}: {exc}"])
    for msg in env.diagnostics:
        print(f"sphaerica {args.command}: {msg}", file=sys.stderr)
    out = dumps(env.to_dict()) + "\n" if args.json else _text(env)
    return EXIT_CODES[env.status], out.encode("utf-8")


def main(argv=None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv, sys.stdin.buffer)
    sys.stdout.buffer.write(out)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
