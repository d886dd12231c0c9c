import math

import numpy as np
import pytest

from sphaerica.triangle import TriangleData

MARGIN = 0.1


def random_unit(rng, n=None):
    v = rng.normal(size=(3,) if n is None else (n, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def random_triangle(rng, margin=MARGIN):
    """Triangle from three uniform random vertices, every element in [margin, pi - margin]."""
    while True:
        P, Q, R = random_unit(rng, 3)
        t = TriangleData.from_vertices(P, Q, R)
        if all(margin <= x <= math.pi - margin for x in t.as_tuple()):
            return t


def random_triangles(seed, n, margin=MARGIN):
    rng = np.random.default_rng(seed)
    return [random_triangle(rng, margin) for _ in range(n)]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is not None and module.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(module.REPORT):
            terminalreporter.write_line(line)
