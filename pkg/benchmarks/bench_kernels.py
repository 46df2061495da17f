#!/usr/bin/env python3
"""Benchmark the compiled pair-sum kernels against the NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--sizes 1024,4096,8192] [--json out.json]
"""

import argparse
import json
import time

import numpy as np

from dircap._kernels import _slow

try:
    from dircap._kernels import _fast
except ImportError:
    _fast = None


def time_call(fn, *args, repeats=3):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(M, rng):
    z = rng.normal(size=M) + 1j * rng.normal(size=M)
    cmp = rng.uniform(0, 1, M)
    asq = rng.uniform(0.1, 1, M)
    bsq = rng.uniform(0.1, 1, M)
    p = rng.normal(size=M) + 1j * rng.normal(size=M)
    rows = []
    cases = [
        ("douglas_offdiag", lambda mod: (mod.douglas_offdiag, (z,))),
        ("lemma6_offdiag", lambda mod: (mod.lemma6_offdiag, (z, 0.25))),
        ("gamma_split", lambda mod: (mod.gamma_split, (cmp, asq, z, bsq, p))),
    ]
    for name, pick in cases:
        fn, args = pick(_slow)
        t_slow, v_slow = time_call(fn, *args)
        entry = {"kernel": name, "M": M, "numpy_s": t_slow, "compiled_s": None,
                 "speedup": None}
        if _fast is not None:
            fn, args = pick(_fast)
            t_fast, v_fast = time_call(fn, *args)
            ref = v_slow[0] if isinstance(v_slow, tuple) else v_slow
            new = v_fast[0] if isinstance(v_fast, tuple) else v_fast
            assert abs(new - ref) <= 1e-9 * max(abs(ref), 1.0), name
            entry["compiled_s"] = t_fast
            entry["speedup"] = t_slow / t_fast
        rows.append(entry)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="1024,4096,8192")
    ap.add_argument("--json", help="also write results here")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = np.random.default_rng(7)
    results = []
    for M in sizes:
        results += bench(M, rng)
    hdr = f"{'kernel':<18}{'M':>7}{'numpy [s]':>12}{'compiled [s]':>14}{'speedup':>9}"
    print(hdr)
    print("-" * len(hdr))
    for r in results:
        comp = "-" if r["compiled_s"] is None else f"{r['compiled_s']:.4f}"
        spd = "-" if r["speedup"] is None else f"{r['speedup']:.1f}x"
        print(f"{r['kernel']:<18}{r['M']:>7}{r['numpy_s']:>12.4f}{comp:>14}{spd:>9}")
    if _fast is None:
        print("compiled backend unavailable; numpy timings only")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(results, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
