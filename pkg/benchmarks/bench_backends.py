#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot kernels (matmul, rank, erasure-pattern scan) and one
end-to-end distance verification.  The scan dominates real workloads: a
single verification of a mid-size code runs tens of thousands of small
eliminations.

Usage:
    python benchmarks/bench_backends.py [--repeats 5] [--scan-patterns 20000]
"""

from __future__ import annotations

import argparse
import itertools
import time

import numpy as np

from lrcc import galois, lrc
from lrcc.backend import get_backend


def timeit(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(fs, repeats, n_patterns):
    rng = np.random.default_rng(0)
    a = rng.integers(0, fs.q, size=(64, 64), dtype=np.uint16)
    b = rng.integers(0, fs.q, size=(64, 64), dtype=np.uint16)
    big = rng.integers(0, fs.q, size=(48, 96), dtype=np.uint16)

    code = lrc.construct_pyramid(lrc.LrcParams(9, 3, 3, 1), fs, seed=1)
    h = np.ascontiguousarray(code.check_matrix())
    n = code.params.n
    pats = np.array(list(itertools.islice(
        itertools.combinations(range(n), 4), n_patterns)), dtype=np.int64)

    rows = []
    for name in ("numba", "numpy"):
        kern = get_backend(name)
        if name == "numba":  # compile outside the timed region
            kern.matmul(a, b, fs.exp, fs.log, fs.qm1)
            kern.rank(big.copy(), fs.exp, fs.log, fs.qm1)
            kern.scan_patterns(h, pats[:4], 1, fs.exp, fs.log, fs.qm1)
        rows.append((
            name,
            timeit(lambda: kern.matmul(a, b, fs.exp, fs.log, fs.qm1), repeats),
            timeit(lambda: kern.rank(big.copy(), fs.exp, fs.log, fs.qm1), repeats),
            timeit(lambda: kern.scan_patterns(h, pats, 1, fs.exp, fs.log, fs.qm1),
                   repeats),
        ))
    return rows, pats.shape[0]


def bench_verify(fs, repeats):
    out = []
    params = lrc.LrcParams(9, 3, 3, 1)
    for name in ("numba", "numpy"):
        import lrcc.backend as backend
        saved = backend.active
        backend.active = get_backend(name)  # all kernel dispatch reads this
        try:
            code = lrc.construct_pyramid(params, fs, seed=1)
            code._check = None

            def run():
                fresh = lrc.LrcCode(params=params, field=fs,
                                    generator=code.generator)
                lrc.verify_distance(fresh)

            run()  # warm compile / cache
            out.append((name, timeit(run, repeats)))
        finally:
            backend.active = saved
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--scan-patterns", type=int, default=20000)
    args = ap.parse_args()

    fs = galois.field(8)
    rows, npat = bench_kernels(fs, args.repeats, args.scan_patterns)
    print(f"kernels over GF(2^8), best of {args.repeats}:")
    print(f"{'backend':8s} {'matmul 64x64':>14s} {'rank 48x96':>12s} "
          f"{'scan ' + str(npat):>14s}")
    for name, tm, tr, ts in rows:
        print(f"{name:8s} {tm * 1e3:>12.2f}ms {tr * 1e3:>10.2f}ms "
              f"{ts * 1e3:>12.2f}ms")
    base = {n: (tm, tr, ts) for n, tm, tr, ts in rows}
    if "numba" in base and "numpy" in base:
        sp = [base["numpy"][i] / base["numba"][i] for i in range(3)]
        print(f"numba speedup: matmul {sp[0]:.1f}x, rank {sp[1]:.1f}x, "
              f"scan {sp[2]:.1f}x")

    print()
    print("end-to-end distance verification of a (9,3,3,1) instance:")
    for name, t in bench_verify(fs, max(2, args.repeats // 2)):
        print(f"{name:8s} {t * 1e3:>12.1f}ms")


if __name__ == "__main__":
    main()
