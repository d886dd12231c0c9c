"""Kernel backend selection.

The compiled extension is used when it was built; otherwise, or when
``SPHAERICA_PURE_PYTHON=1`` is set, the numpy implementation is used.
"""

import os

import numpy as np

from . import _kernels_py

try:
    if os.environ.get("SPHAERICA_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _kernels_py


def _f64(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def closure_chain(ts, center, e1, e2, radius, points, spherical, backend=None):
    """Carrier parameters (t2, t3, t4) of the inscribed-triangle chain, one row per ``ts``."""
    impl = _select(backend)
    return impl.closure_chain(
        _f64(np.atleast_1d(ts)), _f64(center), _f64(e1), _f64(e2), float(radius), _f64(points),
        bool(spherical),
    )


def lhuilier_many(a, b, c, backend=None):
    impl = _select(backend)
    return impl.lhuilier_many(_f64(np.atleast_1d(a)), _f64(np.atleast_1d(b)), _f64(np.atleast_1d(c)))


def _select(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _kernels_py
    if backend == "compiled":
        if _compiled is None:
            raise ImportError("compiled kernels are not available")
        return _compiled
    raise ValueError(f"unknown backend {backend!r}")
