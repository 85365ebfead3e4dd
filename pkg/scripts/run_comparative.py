#!/usr/bin/env python3
"""Run the comparative experiment: every adaptation scheme swept over one
parameter axis, one aggregate CSV per scheme (the input format of the plots
package).

Desk scale by default (ER n=500, 50 runs, a few minutes); pass --full for the
full-scale setup (n=1000, 100 runs).
"""

import argparse
import sys
from pathlib import Path

from diversinet.experiment import (
    ExperimentConfig,
    NetworkSource,
    format_aggregate_csv,
    format_raw_csv,
    run_sweep,
)

SCHEME_POINTS = [
    ("no-a", "no-a", 0.0),
    ("random-a", "random-a", 0.0),
    ("random-graph-c", "random-graph-c", 0.0),
    ("sda-0", "sda", 0.0),
    ("sda-neg06", "sda", -0.6),
    ("sda-1", "sda", 1.0),
]

AXIS_VALUES = {
    "pa": [0.1, 0.15, 0.2, 0.25, 0.3],
    "ns": [3, 4, 5, 6, 7],
    "p": [0.015, 0.02, 0.025, 0.03, 0.035],
    "rho": [-1.0, -0.8, -0.6, -0.4, -0.2, 0.0, 0.2, 0.4, 0.6, 0.8, 1.0],
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--axis", choices=sorted(AXIS_VALUES), default="pa")
    ap.add_argument("--full", action="store_true", help="paper-scale run (n=1000, 100 runs)")
    ap.add_argument("--runs", type=int, help="override run count")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out-dir", default="results")
    ap.add_argument("--raw", action="store_true", help="also write per-run raw CSVs")
    args = ap.parse_args(argv)

    n = 1000 if args.full else 500
    n_r = args.runs or (100 if args.full else 50)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    schemes = SCHEME_POINTS
    if args.axis == "rho":
        schemes = [("sda", "sda", 0.0)]  # rho is the axis itself

    for label, scheme, rho in schemes:
        cfg = ExperimentConfig(
            network=NetworkSource("er", n=n, p=0.025),
            scheme=scheme,
            rho=rho,
            n_r=n_r,
            base_seed=args.seed,
        )
        rows, aggs = run_sweep(cfg, args.axis, AXIS_VALUES[args.axis], jobs=args.jobs)
        agg_path = out_dir / f"{label}_{args.axis}.csv"
        agg_path.write_text(format_aggregate_csv(aggs), encoding="utf-8")
        if args.raw:
            (out_dir / f"{label}_{args.axis}_raw.csv").write_text(
                format_raw_csv(rows), encoding="utf-8"
            )
        print(f"wrote {agg_path}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
