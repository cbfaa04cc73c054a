#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the three hot-loop kernels (sieve, greedy pair scan, move ordering)
on both backends and prints a speedup table.

Usage: python benchmarks/compare_backends.py [--sizes 10000,100000,1000000]
"""

from __future__ import annotations

import argparse
import time
from array import array

from taxman._core import _purepy

try:
    from taxman._core import _kernels
except ImportError:
    _kernels = None

from taxman.number_theory import build_spf, primes_up_to


def best_time(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_backend(impl, n, spf, primes, pairs):
    lowers = array("q", [p[0] for p in pairs])
    uppers = array("q", [p[1] for p in pairs])
    return {
        "build_spf": best_time(lambda: impl.build_spf(n)),
        "born_free_pairs": best_time(lambda: impl.born_free_pairs(n, primes)),
        "order_core": best_time(lambda: impl.order_core(n, lowers, uppers, spf.spf)),
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="10000,100000,1000000")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _kernels is None:
        print("compiled backend not available; showing pure-python timings only")

    for n in sizes:
        spf = build_spf(n)
        primes = primes_up_to(n, spf)
        lowers, uppers = _purepy.born_free_pairs(n, primes)
        pairs = sorted(zip(lowers, uppers))
        pure = bench_backend(_purepy, n, spf, primes, pairs)
        print(f"\nN = {n:,} ({len(pairs):,} matched pairs)")
        header = f"{'kernel':<18}{'pure':>12}" + (f"{'cython':>12}{'speedup':>10}" if _kernels else "")
        print(header)
        if _kernels:
            fast = bench_backend(_kernels, n, spf, primes, pairs)
            for key in pure:
                ratio = pure[key] / fast[key] if fast[key] > 0 else float("inf")
                print(f"{key:<18}{pure[key]*1e3:>10.2f}ms{fast[key]*1e3:>10.2f}ms{ratio:>9.1f}x")
        else:
            for key in pure:
                print(f"{key:<18}{pure[key]*1e3:>10.2f}ms")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
