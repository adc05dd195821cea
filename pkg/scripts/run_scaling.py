"""Run the engine scaling benchmark over doubling sizes and print ratios.

Usage: python scripts/run_scaling.py [--base 15625] [--doublings 4] [--trials 3]
"""

from __future__ import annotations

import argparse

from copar.bench import OPS, bench_scaling, rows_to_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.strip().splitlines()[0])
    ap.add_argument("--base", type=int, default=5**6)
    ap.add_argument("--doublings", type=int, default=4)
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1729)
    args = ap.parse_args()

    sizes = [args.base * 2**i for i in range(args.doublings + 1)]
    rows = bench_scaling(sizes, trials=args.trials, seed=args.seed)
    print(rows_to_csv(rows), end="")
    print()
    print("op        n ->2n time ratio (2.0 = linear)")
    for op in OPS:
        series = [r for r in rows if r.op == op]
        for prev, cur in zip(series, series[1:]):
            print(f"{op:8s} {prev.n:>8d} -> {cur.n:>8d}  x{cur.median_ms / max(prev.median_ms, 1e-9):.2f}")


if __name__ == "__main__":
    main()
