"""Compiled vs numpy fallback on the pair-codegree kernels.

Usage: python benchmarks/bench_codegree.py [--sizes 1000,2000,4000] [--repeat 3]

Both backends must return identical results; the script checks this before
reporting the best-of-``repeat`` wall time for each kernel and size.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from quasiramsey import _fallback
from quasiramsey.constructions import gnp

try:
    from quasiramsey import _core
except ImportError:
    _core = None


def best_time(fn, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="1000,2000,4000")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _core is None:
        raise SystemExit("compiled extension not built; run pip install -e . --no-build-isolation")
    print(f"compiled ISA: {_core.isa()}")
    print(f"{'kernel':<16}{'n':>7}{'compiled s':>13}{'fallback s':>13}{'speedup':>10}")
    for n in (int(x) for x in args.sizes.split(",")):
        g = gnp(n, 0.5, n)
        deg = g.degrees().astype(np.int64)
        kernels = {
            "common_counts": lambda m, g=g: m.common_counts(g.bits, g.n),
            "max_pair_int": lambda m, g=g, deg=deg: m.max_pair_int(g.bits, deg, 1, 2),
            "max_pair_float": lambda m, g=g, deg=deg: m.max_pair_float(g.bits, deg, 0.5),
        }
        for name, run in kernels.items():
            tc, rc = best_time(lambda: run(_core), args.repeat)
            tf, rf = best_time(lambda: run(_fallback), args.repeat)
            if name == "max_pair_float":
                ok = rc[1:] == rf[1:] and abs(rc[0] - rf[0]) < 1e-9
            else:
                ok = same(rc, rf)
            if not ok:
                raise SystemExit(f"{name} disagrees at n={n}")
            print(f"{name:<16}{n:>7}{tc:>13.4f}{tf:>13.4f}{tf / tc:>9.1f}x")


if __name__ == "__main__":
    main()
