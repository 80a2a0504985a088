"""Benchmark the mod-p row-reduction kernels: numba @njit vs pure numpy.

Run:  python3 benchmarks/bench_modp.py [--sizes 100 200 400] [--p 2 3 101]

The same matrices go through both lanes; results are checked for
agreement (identical rank and rref).  MESHALG_NUMBA only controls which
lane the package itself uses; here both are imported explicitly.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from meshalg.kernels import _make_numba_kernel, rref_modp_numpy


def bench(fn, mats, p, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = [fn(m, p) for m in mats]
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256, 512])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 101])
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    try:
        numba_kernel = _make_numba_kernel()
    except ImportError:
        print("numba not importable; nothing to compare")
        return

    # trigger compilation outside the timed region
    numba_kernel(np.ones((4, 4), dtype=np.int64), 3)

    print(f"{'size':>6} {'p':>5} {'numba (s)':>12} {'numpy (s)':>12} {'speedup':>9}")
    for n in args.sizes:
        for p in args.p:
            mats = [rng.integers(0, p, size=(n, n + 16)).astype(np.int64) for _ in range(3)]
            t_nb, out_nb = bench(numba_kernel, mats, p)
            t_np, out_np = bench(rref_modp_numpy, mats, p)
            for (r1, p1), (r2, p2) in zip(out_nb, out_np):
                assert np.array_equal(p1, p2), "pivot mismatch between lanes"
                assert np.array_equal(r1 % p, r2 % p), "rref mismatch between lanes"
            print(f"{n:>6} {p:>5} {t_nb:>12.4f} {t_np:>12.4f} {t_np / t_nb:>8.2f}x")


if __name__ == "__main__":
    main()
