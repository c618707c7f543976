#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each hot kernel on a synthetic workload with both backends, reports
best-of-N wall-clock times and the speedup, and cross-checks that the two
implementations agree on the results they produce.

Usage:
    python3 benchmarks/bench_kernels.py [--repeats N] [--scale F]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from geo3d import _pykernels


def load_compiled():
    try:
        import geo3d._speedups as speedups
    except ImportError:
        return None
    return speedups


def best_of(repeats, fn, *args):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def check_close(label, a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if not np.allclose(a, b, rtol=1e-9, atol=1e-9, equal_nan=True):
        raise SystemExit(f"backend mismatch in {label}")


def workloads(scale):
    rng = np.random.default_rng(2024)

    side = int(512 * scale)
    values = rng.uniform(0.0, 500.0, (side, side))
    missing = rng.uniform(size=(side, side)) < 0.02

    n_samples = int(2000 * scale)
    n_queries = int(5000 * scale)
    sx = rng.uniform(0.0, 100.0, n_samples)
    sy = rng.uniform(0.0, 100.0, n_samples)
    sz = rng.uniform(-10.0, 10.0, n_samples)
    qx = rng.uniform(0.0, 100.0, n_queries)
    qy = rng.uniform(0.0, 100.0, n_queries)

    n_vario = int(1200 * scale)
    vx = rng.uniform(0.0, 50.0, n_vario)
    vy = rng.uniform(0.0, 50.0, n_vario)
    vz = rng.uniform(0.0, 8.0, n_vario)

    words = [
        "".join(rng.choice(list("abcdefghij mnopqrst"), size=40))
        for _ in range(200)
    ]

    return [
        (
            f"derivative_grids {side}x{side}",
            lambda impl: impl.derivative_grids(values, missing, 1.5),
            lambda out: out[0],
        ),
        (
            f"idw_many {n_samples} pts x {n_queries} queries, k=12",
            lambda impl: impl.idw_many(sx, sy, sz, qx, qy, 2.0, 12),
            lambda out: out,
        ),
        (
            f"variogram_accumulate {n_vario} pts "
            f"({n_vario * (n_vario - 1) // 2} pairs)",
            lambda impl: impl.variogram_accumulate(vx, vy, vz, 2.0, 12),
            lambda out: out[0],
        ),
        (
            "levenshtein 100 pairs of 40-char strings",
            lambda impl: [
                impl.levenshtein(words[i], words[i + 100]) for i in range(100)
            ],
            lambda out: out,
        ),
    ]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per backend (best is kept)")
    parser.add_argument("--scale", type=float, default=1.0,
                        help="workload size multiplier")
    args = parser.parse_args()

    speedups = load_compiled()
    if speedups is None:
        print("compiled kernels are not built; only the pure-Python "
              "fallback is available")

    print(f"{'kernel':<52} {'python':>10} {'compiled':>10} {'speedup':>8}")
    print("-" * 84)
    for label, call, comparable in workloads(args.scale):
        t_py, out_py = best_of(args.repeats, call, _pykernels)
        if speedups is None:
            print(f"{label:<52} {t_py * 1e3:9.1f}ms {'-':>10} {'-':>8}")
            continue
        t_c, out_c = best_of(args.repeats, call, speedups)
        check_close(label, comparable(out_py), comparable(out_c))
        print(
            f"{label:<52} {t_py * 1e3:9.1f}ms {t_c * 1e3:9.1f}ms "
            f"{t_py / t_c:7.1f}x"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
