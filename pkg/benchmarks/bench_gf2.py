"""Benchmark the compiled GF(2) kernel against the pure-Python fallback.

Two workloads: incremental reduction of random sparse boundary columns
(the first-cycle process pattern) and batch rank of a sampled complex.

Usage: python3 benchmarks/bench_gf2.py [--n 100] [--reps 3]
"""

from __future__ import annotations

import argparse
import time
from math import comb

import numpy as np

from tophom.complexes import sample_complex
from tophom.gf2 import get_backend


def incremental_workload(n: int, d: int, c: float, seed: int):
    x = sample_complex(n, d, c, seed)
    sub = x.subface_ranks()
    return comb(n, d), [[int(r) for r in row] for row in sub]


def run(backend_cls, n_rows: int, columns) -> tuple[float, int]:
    t0 = time.perf_counter()
    red = backend_cls(n_rows)
    for col in columns:
        red.push(col)
    return time.perf_counter() - t0, red.n_pivots


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--c", type=float, default=3.0)
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()

    n_rows, columns = incremental_workload(args.n, args.d, args.c, seed=12345)
    print(f"n={args.n} d={args.d} c={args.c}: {len(columns)} columns, {n_rows} rows")
    ranks = set()
    for name in ("python", "cython"):
        try:
            cls = get_backend(name)
        except ImportError:
            print(f"{name:>7}: not available")
            continue
        best = min(run(cls, n_rows, columns) for _ in range(args.reps))
        ranks.add(best[1])
        print(f"{name:>7}: {best[0] * 1e3:9.1f} ms   rank={best[1]}")
    assert len(ranks) == 1, "backends disagree on rank"


if __name__ == "__main__":
    main()
