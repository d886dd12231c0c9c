"""SVG diagrams of construction results.

Planar figures are drawn as they are. Spherical figures are drawn under
orthographic projection along a viewpoint direction (default +z), and
hyperbolic ones in the Beltrami-Klein disk, where geodesics are straight.
Given elements carry the class ``given`` and solutions the class ``solution``.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

import numpy as np

from .cevian import CevianConfig
from .core import SmallCircle, tangent_basis
from .errors import InvalidInput, IoFailure
from .lexell import LexellLocus
from .pappus import InscribedTriangleProblem

SIZE = 400.0
MARGIN = 0.08
STYLE = (
    ".given{stroke:#1f4e79;fill:none;stroke-width:1.5}"
    ".given.point{fill:#1f4e79}"
    ".solution{stroke:#b03a2e;fill:none;stroke-width:1.5}"
    ".solution.point{fill:#b03a2e}"
    ".frame{stroke:#999999;fill:none;stroke-width:0.75}"
)


@dataclass(frozen=True)
class PappusFigure:
    problem: InscribedTriangleProblem
    triangles: tuple


@dataclass(frozen=True)
class ApolloniusFigure:
    givens: tuple
    solutions: tuple


class _Canvas:
    """Collects primitives in model coordinates, then fits them to the page."""

    def __init__(self):
        self.items = []  # (kind, class, payload)

    def polyline(self, pts, cls, closed=False):
        self.items.append(("path", cls, (np.asarray(pts, dtype=float), closed)))

    def circle(self, center, r, cls):
        self.items.append(("circle", cls, (np.asarray(center, dtype=float), float(r))))

    def point(self, p, cls):
        self.items.append(("point", cls, np.asarray(p, dtype=float)))

    def _bounds(self):
        lo, hi = np.full(2, np.inf), np.full(2, -np.inf)
        for kind, _, data in self.items:
            if kind == "path":
                pts = data[0]
            elif kind == "circle":
                pts = np.array([data[0] - data[1], data[0] + data[1]])
            else:
                pts = data[None, :]
            lo, hi = np.minimum(lo, pts.min(0)), np.maximum(hi, pts.max(0))
        if not np.all(np.isfinite(lo)):
            lo, hi = np.array([-1.0, -1.0]), np.array([1.0, 1.0])
        return lo, hi

    def render(self) -> bytes:
        lo, hi = self._bounds()
        span = max(float(np.max(hi - lo)), 1e-12)
        scale = SIZE * (1 - 2 * MARGIN) / span
        mid = 0.5 * (lo + hi)

        def xy(p):
            return SIZE / 2 + scale * (p[0] - mid[0]), SIZE / 2 - scale * (p[1] - mid[1])

        svg = ET.Element(
            "svg",
            {"xmlns": "http://www.w3.org/2000/svg", "width": _fmt(SIZE), "height": _fmt(SIZE),
             "viewBox": f"0 0 {_fmt(SIZE)} {_fmt(SIZE)}"},
        )
        ET.SubElement(svg, "style").text = STYLE
        for kind, cls, data in self.items:
            if kind == "path":
                pts, closed = data
                d = " ".join(("M" if i == 0 else "L") + "{} {}".format(*map(_fmt, xy(p))) for i, p in enumerate(pts))
                ET.SubElement(svg, "path", {"class": cls, "d": d + (" Z" if closed else "")})
            elif kind == "circle":
                (cx, cy), r = xy(data[0]), data[1] * scale
                ET.SubElement(svg, "circle", {"class": cls, "cx": _fmt(cx), "cy": _fmt(cy), "r": _fmt(r)})
            else:
                cx, cy = xy(data)
                ET.SubElement(svg, "circle", {"class": cls + " point", "cx": _fmt(cx), "cy": _fmt(cy), "r": "3"})
        return ET.tostring(svg, encoding="utf-8", xml_declaration=True) + b"\n"


def _fmt(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Projection:
    def __init__(self, viewpoint):
        v = np.asarray(viewpoint, dtype=float)
        n = float(np.linalg.norm(v))
        if not n > 0:
            raise InvalidInput("viewpoint must be a non-zero vector")
        self.view = v / n
        self.e1, self.e2 = _screen_axes(self.view)

    def __call__(self, p):
        p = np.asarray(p, dtype=float)
        return np.array([p @ self.e1, p @ self.e2]).T


def _screen_axes(view):
    if abs(view[2]) > 1 - 1e-12:  # looking down the z axis: keep x right, y up
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, math.copysign(1.0, view[2]), 0.0])
    return tangent_basis(view)


def _great_arc(p, q, k=64):
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    omega = math.atan2(float(np.linalg.norm(np.cross(p, q))), float(p @ q))
    if omega < 1e-15:
        return np.array([p, q])
    s = np.linspace(0.0, 1.0, k)[:, None]
    return (np.sin((1 - s) * omega) * p + np.sin(s * omega) * q) / math.sin(omega)


def _small_circle_points(c: SmallCircle, lo=0.0, hi=2 * math.pi, k=181):
    return np.array([c.point_at(t) for t in np.linspace(lo, hi, k)])


def _draw_lexell(cv: _Canvas, locus: LexellLocus, proj):
    cv.circle((0.0, 0.0), 1.0, "frame")
    a, b = locus.base_a.vec, locus.base_b.vec
    cv.polyline(proj(_great_arc(a, b)), "given")
    lo, hi = locus.arc()
    cv.polyline(proj(_small_circle_points(locus.circle, lo, hi)), "solution")
    cv.point(proj(a), "given")
    cv.point(proj(b), "given")


def _draw_pappus(cv: _Canvas, fig: PappusFigure, proj):
    prob = fig.problem
    if prob.spherical:
        cv.circle((0.0, 0.0), 1.0, "frame")
        cv.polyline(proj(_small_circle_points(prob.carrier)), "given", closed=True)
        for p in prob.points:
            cv.point(proj(p), "given")
        for tri in fig.triangles:
            v = tri.vertices
            arcs = [_great_arc(v[i], v[(i + 1) % 3]) for i in range(3)]
            cv.polyline(proj(np.vstack(arcs)), "solution", closed=True)
    else:
        c = prob.carrier
        cv.circle((c.cx, c.cy), c.r, "given")
        for p in prob.points:
            cv.point(p, "given")
        for tri in fig.triangles:
            cv.polyline(np.array(tri.vertices), "solution", closed=True)


def _draw_apollonius(cv: _Canvas, fig: ApolloniusFigure, proj):
    for g in fig.givens:
        cv.circle(g.center[:2], g.r, "given")
    for s in fig.solutions:
        cv.circle(s.center[:2], s.r, "solution")


def _draw_cevian(cv: _Canvas, cfg: CevianConfig, proj):
    g = cfg.geometry
    if g == "euclidean":
        def to2(*pts):
            return np.array(pts, dtype=float)
    elif g == "spherical":
        cv.circle((0.0, 0.0), 1.0, "frame")

        def to2(*pts):
            return proj(np.vstack([_great_arc(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]))
    else:
        cv.circle((0.0, 0.0), 1.0, "frame")

        def to2(*pts):
            return np.array([[p[0] / p[2], p[1] / p[2]] for p in pts])

    cv.polyline(to2(cfg.A, cfg.B, cfg.C, cfg.A), "given", closed=True)
    for v, f in ((cfg.A, cfg.a), (cfg.B, cfg.b), (cfg.C, cfg.c)):
        cv.polyline(to2(v, cfg.O, f), "solution")
    cv.point(to2(cfg.O, cfg.O)[0], "solution")


def render_svg(result, viewpoint=(0.0, 0.0, 1.0)) -> bytes:
    proj = _Projection(viewpoint)
    cv = _Canvas()
    if isinstance(result, LexellLocus):
        _draw_lexell(cv, result, proj)
    elif isinstance(result, PappusFigure):
        _draw_pappus(cv, result, proj)
    elif isinstance(result, ApolloniusFigure):
        _draw_apollonius(cv, result, proj)
    elif isinstance(result, CevianConfig):
        _draw_cevian(cv, result, proj)
    else:
        raise InvalidInput(f"cannot draw {type(result).__name__}")
    return cv.render()


def emit_svg(result, path, viewpoint=(0.0, 0.0, 1.0)) -> None:
    """Write an SVG picture of ``result`` to ``path``."""
    data = render_svg(result, viewpoint)
    try:
        with open(path, "wb") as fh:
            fh.write(data)
    except OSError as exc:
        raise IoFailure(f"cannot write {path}: {exc}") from exc
