#!/usr/bin/env python3
"""Benchmark the numba kernels against their pure-numpy fallbacks.

Times the row kernels on a Monte Carlo sized batch and one full
isoperimetric-ratio estimate per backend.  Run from the repository
root:

    python3 bench/bench_kernels.py [--samples N] [--dim D]

The active backend for library calls is chosen at import time by
ELLIPSURF_NO_JIT; this script imports both kernel variants directly,
so one invocation covers both paths.
"""

import argparse
import time

import numpy as np

from ellipsurf import _kernels
from ellipsurf import mc


def best_of(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def fmt(seconds):
    return f"{seconds * 1e3:9.2f} ms"


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--dim", type=int, default=8)
    args = parser.parse_args()

    gen = mc.RngStream(0, 0).generator()
    x = gen.standard_normal((args.samples, args.dim))
    q2 = gen.uniform(0.1, 4.0, size=args.dim)

    rows = [
        ("row_sqrt_qform", lambda f: f(x, q2),
         _kernels.row_sqrt_qform_numpy, _kernels.row_sqrt_qform_numba),
        ("row_norm", lambda f: f(x),
         _kernels.row_norm_numpy, _kernels.row_norm_numba),
        ("row_pnorm(p=1)", lambda f: f(x, 1.0),
         _kernels.row_pnorm_numpy, _kernels.row_pnorm_numba),
        ("row_pnorm(p=3)", lambda f: f(x, 3.0),
         _kernels.row_pnorm_numpy, _kernels.row_pnorm_numba),
    ]

    print(f"batch: {args.samples} x {args.dim} float64   "
          f"(numba available: {_kernels.NUMBA_AVAILABLE}, "
          f"JIT active for library calls: {_kernels.JIT_ENABLED})")
    print(f"{'kernel':18s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s}")
    for name, call, np_fn, nb_fn in rows:
        t_np = best_of(lambda: call(np_fn))
        if nb_fn is None:
            print(f"{name:18s} {fmt(t_np)} {'n/a':>12s} {'n/a':>9s}")
            continue
        call(nb_fn)  # compile outside the timed region
        t_nb = best_of(lambda: call(nb_fn))
        print(f"{name:18s} {fmt(t_np)} {fmt(t_nb)} {t_np / t_nb:8.2f}x")

    # end-to-end: one iso-ratio estimate per backend
    from ellipsurf.geometry import Ellipsoid
    from ellipsurf.mc import McConfig, iso_ratio_mc

    e = Ellipsoid(np.exp(gen.uniform(0.0, 1.0, size=args.dim)))
    cfg = McConfig(samples=args.samples, seed=123)
    backend = "numba" if _kernels.JIT_ENABLED else "numpy"
    iso_ratio_mc(e, cfg)  # warm
    t = best_of(lambda: iso_ratio_mc(e, cfg), repeats=3)
    print(f"\niso_ratio_mc ({args.samples} samples, active backend = {backend}): {fmt(t)}")
    print("re-run with ELLIPSURF_NO_JIT=1 to time the end-to-end numpy path")


if __name__ == "__main__":
    main()
