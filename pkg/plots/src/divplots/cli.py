"""CLI: render metric figures from diversinet aggregate CSV files.

    plot --metric pc --axis pa --out fig.png no-a.csv sda.csv ...
    plot --all-metrics --axis pa --out fig.png no-a.csv sda.csv ...

The second form writes fig_pc.png, fig_sg.png, fig_sd.png, and fig_dc.png.
"""

from __future__ import annotations

import argparse
import sys

from .figures import METRICS, FigureSpec, PlotInputError, all_metric_paths, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plot", description="Render diversinet sweep figures from aggregate CSVs"
    )
    parser.add_argument("csvs", nargs="+", metavar="CSV", help="one aggregate CSV per scheme")
    parser.add_argument("--metric", choices=METRICS, default="pc")
    parser.add_argument("--axis", required=True, help="x-axis label (the swept parameter)")
    parser.add_argument("--out", required=True, help="output PNG path")
    parser.add_argument(
        "--all-metrics",
        action="store_true",
        help="render pc/sg/sd/dc variants, suffixing the output name",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.all_metrics:
            for metric, path in all_metric_paths(args.out).items():
                render(FigureSpec(tuple(args.csvs), metric, args.axis, path))
                print(path)
        else:
            out = render(FigureSpec(tuple(args.csvs), args.metric, args.axis, args.out))
            print(out)
        return 0
    except PlotInputError as e:
        sys.stderr.write(f"plot: error: {e}\n")
        return 1
    except OSError as e:
        sys.stderr.write(f"plot: error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
