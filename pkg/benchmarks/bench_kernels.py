#!/usr/bin/env python3
"""Benchmark the hot counting kernels: numba JIT vs the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--scale 16] [--points 400]

Counts are asserted equal across backends; timings are wall clock with
one warmup call for the JIT path.
"""

import argparse
import os
import time

import numpy as np

from zarank import kernels
from zarank.geometry import clear_columns, st_lower_bound_minor_config


def time_call(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return result, best


def bench_unit_pairs(scale: int):
    cfg = st_lower_bound_minor_config(2, scale)
    cols, scalars = clear_columns(cfg.points)
    x = np.array([c[0] for c in cols], dtype=np.int64)
    y = np.array([c[1] for c in cols], dtype=np.int64)
    s = np.array(scalars, dtype=np.int64)
    rows = []
    for backend in ("numba", "numpy"):
        os.environ["ZARANK_BACKEND"] = backend
        if backend == "numba":
            kernels.count_unit_pairs(x[:64], y[:64], s[:64])  # JIT warmup
        count, secs = time_call(kernels.count_unit_pairs, x, y, s)
        rows.append((backend, count, secs))
    return cfg.n, rows


def bench_area_triples(n: int, seed: int = 7):
    rng = np.random.default_rng(seed)
    x = rng.integers(0, 4 * n, size=n).astype(np.int64)
    y = rng.integers(0, 4 * n, size=n).astype(np.int64)
    rows = []
    for backend in ("numba", "numpy"):
        os.environ["ZARANK_BACKEND"] = backend
        if backend == "numba":
            kernels.count_area_triples(x[:32], y[:32], 9, 10, 11, 10, 4)
        count, secs = time_call(kernels.count_area_triples,
                                x, y, 9, 10, 11, 10, 4)
        rows.append((backend, count, secs))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--scale", type=int, default=16,
                    help="extremal config scale for the pair sweep")
    ap.add_argument("--points", type=int, default=400,
                    help="point count for the area sweep")
    args = ap.parse_args()

    n, rows = bench_unit_pairs(args.scale)
    print(f"unit-minor pair sweep over {n} columns "
          f"(~{n * (n - 1) // 2:.3g} pairs):")
    counts = {c for _, c, _ in rows}
    assert len(counts) == 1, f"backend mismatch: {rows}"
    for backend, count, secs in rows:
        print(f"  {backend:6s} count={count} time={secs:.3f}s")

    rows = bench_area_triples(args.points)
    print(f"area triple sweep over {args.points} points "
          f"(~{args.points**3 / 6:.3g} triples):")
    counts = {c for _, c, _ in rows}
    assert len(counts) == 1, f"backend mismatch: {rows}"
    for backend, count, secs in rows:
        print(f"  {backend:6s} count={count} time={secs:.3f}s")


if __name__ == "__main__":
    main()
