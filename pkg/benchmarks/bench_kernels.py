"""Benchmark the compiled distance kernels against the numpy fallback.

Run as: python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from nldd import _dist_py

try:
    from nldd import _dist_cy
except ImportError:
    _dist_cy = None


def _time(fn, *args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(0)
    print(f"{'case':>24}  {'python':>10}  {'cython':>10}  {'speedup':>8}")
    for n, d in [(200, 20), (500, 100), (1000, 300), (2000, 50)]:
        a = rng.standard_normal((n, d))
        b = rng.standard_normal((n, d))
        x = rng.standard_normal(d)

        if _dist_cy is not None:
            assert np.allclose(_dist_py.pairwise_sq_dists(a[:50], b[:50]),
                               _dist_cy.pairwise_sq_dists(a[:50], b[:50]))

        t_py = _time(_dist_py.pairwise_sq_dists, a, b, repeats=3)
        t_cy = _time(_dist_cy.pairwise_sq_dists, a, b, repeats=3) \
            if _dist_cy else float("nan")
        print(f"{f'pairwise {n}x{n}x{d}':>24}  {t_py:10.4f}  {t_cy:10.4f}  "
              f"{t_py / t_cy:8.2f}x" if _dist_cy else "")

        t_py = _time(_dist_py.sq_dists, x, a)
        t_cy = _time(_dist_cy.sq_dists, x, a) if _dist_cy else float("nan")
        print(f"{f'row {n}x{d}':>24}  {t_py:10.6f}  {t_cy:10.6f}  "
              f"{t_py / t_cy:8.2f}x" if _dist_cy else "")
    if _dist_cy is None:
        print("compiled backend not available; only the fallback was timed")


if __name__ == "__main__":
    main()
