#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Run after installing the package:

    python benchmarks/bench_kernels.py

Covers the two hot paths: the rolling distance-correlation stack over a
year of 15 keywords (both window sizes) and per-frame triangle counting.
Set TRENDNET_NO_NUMBA=1 to confirm the package falls back cleanly (the
comparison is then skipped).
"""

import argparse
import time

import numpy as np

from trendnet import kernels


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_rolling(rng, repeats):
    data = rng.uniform(0, 120, (365, 15))
    for window in (15, 30):
        t_np, ref = timeit(lambda: kernels._rolling_dcor_numpy(data, window), repeats)
        line = f"rolling dcor  T=365 K=15 W={window:2d}   numpy {t_np * 1e3:8.1f} ms"
        if kernels.HAVE_NUMBA:
            t_nb, jit = timeit(lambda: kernels._rolling_dcor_numba(data, window), repeats)
            diff = np.abs(jit - ref).max()
            line += f"   numba {t_nb * 1e3:8.1f} ms   speedup {t_np / t_nb:5.1f}x   max|diff| {diff:.2e}"
        print(line)


def bench_triangles(rng, repeats):
    frames = (rng.random((2748, 15, 15)) < 0.4)
    frames = (frames | frames.transpose(0, 2, 1)).astype(np.uint8)
    for f in frames:
        np.fill_diagonal(f, 0)

    def run_numpy():
        return [kernels._triangle_counts_numpy(f) for f in frames]

    t_np, ref = timeit(run_numpy, repeats)
    line = f"triangles     2748 frames K=15    numpy {t_np * 1e3:8.1f} ms"
    if kernels.HAVE_NUMBA:
        def run_numba():
            return [kernels._triangle_counts_numba(f) for f in frames]

        t_nb, jit = timeit(run_numba, repeats)
        same = all(np.array_equal(a, b) for a, b in zip(ref, jit))
        line += f"   numba {t_nb * 1e3:8.1f} ms   speedup {t_np / t_nb:5.1f}x   equal {same}"
    print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3, help="take the best of N runs")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"active backend: {kernels.BACKEND}")
    if kernels.HAVE_NUMBA:
        start = time.perf_counter()
        kernels.warmup()
        print(f"jit warmup: {time.perf_counter() - start:.2f} s (cached after first run)")
    rng = np.random.default_rng(args.seed)
    bench_rolling(rng, args.repeats)
    bench_triangles(rng, args.repeats)


if __name__ == "__main__":
    main()
