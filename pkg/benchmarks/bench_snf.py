"""Benchmark the compiled vs pure-Python Smith normal form kernels.

Both backends are loaded directly (no env tricks needed) and run on the
same matrix stream; outputs are asserted identical before timing is
reported.

Usage: python3 benchmarks/bench_snf.py [--trials N] [--dim D] [--bound B]
"""

import argparse
import random
import time

from fpmod import _snf_pure

try:
    from fpmod import _snf_cy
except ImportError:
    _snf_cy = None


def make_matrices(trials, dim, bound, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        n = rng.randint(1, dim)
        m = rng.randint(1, dim)
        out.append(([[rng.randint(-bound, bound) for _ in range(m)] for _ in range(n)], n, m))
    return out


def bench(fn, mats):
    start = time.perf_counter()
    results = [fn(rows, n, m) for rows, n, m in mats]
    return time.perf_counter() - start, results


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--dim", type=int, default=6)
    ap.add_argument("--bound", type=int, default=50)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()

    mats = make_matrices(args.trials, args.dim, args.bound, args.seed)
    t_pure, r_pure = bench(_snf_pure.snf_int, mats)
    print(f"pure:   {args.trials} SNFs in {t_pure:.3f}s ({args.trials / t_pure:.0f}/s)")
    if _snf_cy is None:
        print("cython: extension not built; skipping")
        return
    t_cy, r_cy = bench(_snf_cy.snf_int, mats)
    assert r_pure == r_cy, "backends disagree"
    print(f"cython: {args.trials} SNFs in {t_cy:.3f}s ({args.trials / t_cy:.0f}/s)")
    print(f"speedup: {t_pure / t_cy:.2f}x (identical outputs verified)")


if __name__ == "__main__":
    main()
