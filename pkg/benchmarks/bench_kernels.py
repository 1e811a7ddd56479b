#!/usr/bin/env python3
"""Benchmark the compiled grid kernel against the pure-numpy fallback.

Two workloads: one long tau grid (figure generation) and many length-1
grids (the golden-section refinement pattern of the maxima scan).

    python benchmarks/bench_kernels.py [--n 40] [--m 20] [--points 200000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spinvdw import _kernels_py
from spinvdw.combinatorics import b_table, schmidt_multiplicities
from spinvdw.evolution import phase_spectrum
from spinvdw.model import ModelSpec

try:
    from spinvdw import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=40)
    parser.add_argument("--m", type=int, default=20)
    parser.add_argument("--points", type=int, default=200_000)
    parser.add_argument("--calls", type=int, default=20_000, help="single-point call count")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    spec = ModelSpec(args.n, args.m)
    coeffs = np.ascontiguousarray(b_table(spec).as_array())
    phases = np.ascontiguousarray(phase_spectrum(spec).phases, dtype=float)
    degeneracy = np.ascontiguousarray(schmidt_multiplicities(spec), dtype=float)
    taus = np.linspace(0.0, 4.0 * np.pi, args.points)
    singles = [np.array([t]) for t in np.linspace(0.0, np.pi, args.calls)]

    impls = [("python", _kernels_py)]
    if _kernels is not None:
        impls.append(("cython", _kernels))
    else:
        print("compiled kernel not available; benchmarking the fallback only")

    print(f"dimension M'+1 = {spec.m_prime + 1}, grid = {args.points} points, "
          f"{args.calls} single-point calls")
    print(f"{'backend':8s} {'grid [s]':>10s} {'Mpts/s':>8s} {'singles [s]':>12s}")
    grid_times = {}
    for name, impl in impls:
        grid_time = best_of(lambda: impl.schmidt_entropy_grid(coeffs, phases, degeneracy, taus),
                            args.repeats)
        single_time = best_of(
            lambda: [impl.schmidt_entropy_grid(coeffs, phases, degeneracy, t) for t in singles],
            max(1, args.repeats // 2),
        )
        grid_times[name] = grid_time
        print(f"{name:8s} {grid_time:10.4f} {args.points / grid_time / 1e6:8.2f} {single_time:12.4f}")

    if len(impls) == 2:
        p_py, e_py = _kernels_py.schmidt_entropy_grid(coeffs, phases, degeneracy, taus[:4096])
        p_cy, e_cy = _kernels.schmidt_entropy_grid(coeffs, phases, degeneracy, taus[:4096])
        print(f"speedup (grid): {grid_times['python'] / grid_times['cython']:.2f}x")
        print(f"cross-check: max|dP| = {np.max(np.abs(p_py - p_cy)):.3e}, "
              f"max|dE| = {np.max(np.abs(e_py - e_cy)):.3e}")


if __name__ == "__main__":
    main()
