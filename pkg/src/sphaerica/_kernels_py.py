"""Pure-Python (numpy) fallback for the compiled kernels in ``_kernels.pyx``."""

import numpy as np


def _reflect(t, center, e1, e2, radius, p, spherical):
    """Parameter of the second carrier point on the geodesic through V(t) and p."""
    v = center + radius * (np.cos(t)[:, None] * e1 + np.sin(t)[:, None] * e2)
    if spherical:
        n = np.cross(v, p)
    else:
        n = np.stack([-(p[1] - v[:, 1]), p[0] - v[:, 0], np.zeros(len(t))], axis=1)
    alpha = n @ e1
    beta = n @ e2
    out = 2.0 * np.arctan2(beta, alpha) - t
    out[(alpha == 0.0) & (beta == 0.0)] = np.nan
    return out


def closure_chain(ts, center, e1, e2, radius, points, spherical):
    ts = np.asarray(ts, dtype=float)
    t2 = _reflect(ts, center, e1, e2, radius, points[2], spherical)
    t3 = _reflect(t2, center, e1, e2, radius, points[0], spherical)
    t4 = _reflect(t3, center, e1, e2, radius, points[1], spherical)
    return np.stack([t2, t3, t4], axis=1)


def lhuilier_many(a, b, c):
    a, b, c = (np.asarray(x, dtype=float) for x in (a, b, c))
    s = 0.5 * (a + b + c)
    p = np.tan(0.5 * s) * np.tan(0.5 * (s - a)) * np.tan(0.5 * (s - b)) * np.tan(0.5 * (s - c))
    return 4.0 * np.arctan(np.sqrt(np.maximum(p, 0.0)))
