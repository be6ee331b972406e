"""Compare the compiled Sturm-bisection kernel with the scipy fallback.

Run with ``python benchmarks/bench_tridiag.py``. The matrices are the radial
finite-difference operators the oracle actually builds, so the timings
reflect real workloads rather than random tridiagonals.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from kgmakarov import oracle, tridiag


def radial_operator(cells: int, ell: float = 0.5, s: float = 1.0, r_max: float = 60.0):
    grid = oracle.Grid1D(0.0, r_max, cells)
    r, h = grid.points, grid.h
    diag = 2.0 / h**2 + ell * (ell + 1) / r**2 - 2.0 * s / r
    return diag, np.full(len(r) - 1, -1.0 / h**2)


def bench(sizes, count, repeat):
    backends = tridiag.available_backends()
    print(f"{'size':>8}  " + "  ".join(f"{b:>12}" for b in backends) + "   max |diff|")
    for n in sizes:
        d, e = radial_operator(n)
        times, results = [], []
        for b in backends:
            t = min(timeit.repeat(lambda: tridiag.lowest_eigenvalues(d, e, count, backend=b),
                                  number=1, repeat=repeat))
            times.append(t)
            results.append(tridiag.lowest_eigenvalues(d, e, count, backend=b))
        diff = max(float(np.max(np.abs(r - results[0]))) for r in results)
        print(f"{n:>8}  " + "  ".join(f"{t * 1e3:>10.2f}ms" for t in times) + f"   {diff:.1e}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[1_000, 10_000, 60_000, 120_000])
    ap.add_argument("--count", type=int, default=4, help="eigenvalues per solve")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    bench(args.sizes, args.count, args.repeat)


if __name__ == "__main__":
    main()
