"""Time the compiled kernels against the numpy fallback."""

import argparse
import math
import timeit

import numpy as np

from sphaerica import kernels, pappus
from sphaerica.apollonius import Circle2D


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100_000, help="samples per call")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    prob = pappus.InscribedTriangleProblem(Circle2D(0.3, -0.2, 1.4), ((-1, 2), (0.5, 0.1), (3, 2)))
    frame = prob.frame()
    ts = np.linspace(0, 2 * math.pi, args.n, endpoint=False)
    rng = np.random.default_rng(0)
    a, b, c = rng.uniform(0.3, 1.0, (3, args.n))

    jobs = {
        "closure_chain": lambda be: kernels.closure_chain(ts, *frame, prob.spherical, backend=be),
        "lhuilier_many": lambda be: kernels.lhuilier_many(a, b, c, backend=be),
    }
    backends = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])
    print(f"n={args.n}  default backend: {kernels.BACKEND}")
    for name, job in jobs.items():
        times = {be: min(timeit.repeat(lambda: job(be), number=1, repeat=args.repeat)) for be in backends}
        line = "  ".join(f"{be} {t * 1e3:8.2f} ms" for be, t in times.items())
        if "compiled" in times:
            line += f"  speedup {times['python'] / times['compiled']:.1f}x"
        print(f"{name:14s} {line}")


if __name__ == "__main__":
    main()
