#!/usr/bin/env python3
"""Benchmark the two F_p row-reduction kernels against each other.

Runs the numba-jitted elimination and the vectorized numpy twin on the
same random matrices, checks they produce identical ranks and pivots, and
prints timings.  Usage:

    python benchmarks/bench_kernels.py [--sizes 50,100,200,400] [--prime 32003]

GMF_PURE_NUMPY=1 makes the package itself use the numpy path; this script
always times both (when numba is importable) regardless of the flag.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from gmf._kernels import HAVE_NUMBA, rref_modp_numpy

if HAVE_NUMBA:
    from gmf._kernels import _rref_modp_numba


def bench(sizes, prime, repeats=3, density=0.3, seed=7):
    rng = np.random.default_rng(seed)
    print(f"prime={prime} repeats={repeats} density={density} numba={'yes' if HAVE_NUMBA else 'NO (skipped)'}")
    header = f"{'n':>6} {'numpy (s)':>12} {'numba (s)':>12} {'speedup':>9}  agreement"
    print(header)
    print("-" * len(header))
    for n in sizes:
        a = rng.integers(0, prime, size=(n, n), dtype=np.int64)
        mask = rng.random((n, n)) < density
        a = np.where(mask, a, 0)
        t_np = min(_time(rref_modp_numpy, a, prime) for _ in range(repeats))
        rank_np, piv_np = rref_modp_numpy(a.copy(), prime)
        if HAVE_NUMBA:
            _rref_modp_numba(a.copy(), prime)  # compile outside the timer
            t_nb = min(_time(_rref_modp_numba, a, prime) for _ in range(repeats))
            rank_nb, piv_nb = _rref_modp_numba(a.copy(), prime)
            agree = rank_np == int(rank_nb) and list(piv_np[:rank_np]) == list(piv_nb[:rank_nb])
            print(f"{n:>6} {t_np:>12.4f} {t_nb:>12.4f} {t_np / t_nb:>8.1f}x  {'ok' if agree else 'MISMATCH'}")
            if not agree:
                raise SystemExit("kernel disagreement")
        else:
            print(f"{n:>6} {t_np:>12.4f} {'-':>12} {'-':>9}  numpy only")


def _time(fn, a, prime):
    b = a.copy()
    t0 = time.perf_counter()
    fn(b, prime)
    return time.perf_counter() - t0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="50,100,200,400")
    parser.add_argument("--prime", type=int, default=32003)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()
    bench([int(s) for s in args.sizes.split(",")], args.prime, args.repeats)
