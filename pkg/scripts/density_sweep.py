#!/usr/bin/env python3
"""Sweep the class-T density g(n) over a list of checkpoints.

Defaults reproduce the desk-scale checkpoints up to 10^6; pass larger
checkpoints (up to 10^8) for longer runs.
"""

import argparse
import sys
import time

from oddcycles.stats import density_table, write_density_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--checkpoints",
        default="2000,100000,1000000",
        help="comma-separated ascending n values",
    )
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", default=None, help="CSV path (default: stdout)")
    args = ap.parse_args()

    cps = [int(x) for x in args.checkpoints.split(",") if x]
    t0 = time.perf_counter()
    rows = density_table(cps, workers=args.workers)
    elapsed = time.perf_counter() - t0
    if args.out:
        with open(args.out, "w") as fh:
            write_density_csv(rows, fh)
        print(f"wrote {len(rows)} rows to {args.out} in {elapsed:.1f}s", file=sys.stderr)
    else:
        write_density_csv(rows, sys.stdout)
        print(f"# elapsed: {elapsed:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
