"""Benchmark the numba kernels against the pure-numpy fallback.

Usage:
    python3 benchmarks/bench_kernels.py [--repeats 5] [--sizes 64,256,1024]

Times ``mode_sum`` (plane-wave superposition on a sample grid) and
``gauss_mode_integral`` (adaptive Gauss-Kronrod of a chirped mode sum) on
matched random inputs and reports the speedup of the jitted path.  Numba
compilation happens once outside the timed region.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from superosc import kernels_numpy

try:
    from superosc import kernels_numba
except ImportError:
    kernels_numba = None


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_mode_sum(n_modes, n_points, repeats, rng):
    w = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
    k = rng.uniform(-5.0, 5.0, n_modes)
    x = np.linspace(-20.0, 20.0, n_points)
    rows = []
    ref = kernels_numpy.mode_sum(x, w, k)
    rows.append(("numpy", _time(lambda: kernels_numpy.mode_sum(x, w, k), repeats)))
    if kernels_numba is not None:
        kernels_numba.mode_sum(x, w, k)  # warm-up compile
        got = kernels_numba.mode_sum(x, w, k)
        assert np.allclose(got, ref, atol=1e-12)
        rows.append(("numba", _time(lambda: kernels_numba.mode_sum(x, w, k), repeats)))
    return rows


def bench_gauss_integral(n_modes, repeats, rng):
    w = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
    k = rng.uniform(-3.0, 3.0, n_modes)
    args = (-30.0, 30.0, 0.9, 1e-2, 0.4, w, k)
    rows = []
    ref, _ = kernels_numpy.gauss_mode_integral(*args, abs_tol=1e-10)
    rows.append(("numpy", _time(
        lambda: kernels_numpy.gauss_mode_integral(*args, abs_tol=1e-10), repeats)))
    if kernels_numba is not None:
        got, _ = kernels_numba.gauss_mode_integral(*args, abs_tol=1e-10)
        assert abs(got - ref) < 1e-8
        rows.append(("numba", _time(
            lambda: kernels_numba.gauss_mode_integral(*args, abs_tol=1e-10), repeats)))
    return rows


def _report(title, rows):
    print(f"\n{title}")
    base = rows[0][1]
    for name, t in rows:
        print(f"  {name:>6s}  {t * 1e3:9.3f} ms  speedup x{base / t:6.2f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--sizes", type=str, default="16,64,256",
                    help="comma-separated mode counts")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(7)

    if kernels_numba is None:
        print("numba unavailable: timing the numpy path only")

    for n in sizes:
        _report(f"mode_sum: {n} modes x 4096 points",
                bench_mode_sum(n, 4096, args.repeats, rng))
        _report(f"gauss_mode_integral: {n} modes",
                bench_gauss_integral(n, args.repeats, rng))


if __name__ == "__main__":
    main()
