"""Render line charts with error bars from diversinet aggregate CSV files.

Each input file holds one scheme's sweep (the aggregate CSV the simulator
emits); a figure shows one metric across the swept axis, one line per scheme.
Rendering is deterministic: fixed figure geometry, a fixed style table
indexed by input order, and no timestamp metadata in the PNG.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

METRICS = ("pc", "sg", "sd", "dc")

_EXPECTED_HEADER = [
    "scheme", "axis", "axis_value", "n",
    "pc_mean", "pc_sd", "sg_mean", "sg_sd",
    "sd_mean", "sd_sd", "dc_mean", "dc_sd",
]

_Y_LABELS = {
    "pc": "compromised fraction (pc)",
    "sg": "giant component fraction (sg)",
    "sd": "mean software diversity (sd)",
    "dc": "defense cost (dc)",
}

# style assignment follows input file order
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_MARKERS = ("o", "s", "^", "D", "v", "x")


class PlotInputError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    csv_paths: tuple[str, ...]
    metric: str  # "pc" | "sg" | "sd" | "dc"
    axis_label: str
    out_path: str


@dataclass(frozen=True)
class SchemeSeries:
    scheme: str
    axis_values: tuple[str, ...]
    means: tuple[float, ...]
    sds: tuple[float, ...]


def read_aggregate(path: str | Path, metric: str) -> SchemeSeries:
    """Load one scheme's aggregate CSV and extract a metric column."""
    if metric not in METRICS:
        raise PlotInputError(f"unknown metric {metric!r}; options: {', '.join(METRICS)}")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != _EXPECTED_HEADER:
            raise PlotInputError(
                f"{path}: expected aggregate CSV header {','.join(_EXPECTED_HEADER)}"
            )
        rows = list(reader)
    if not rows:
        raise PlotInputError(f"{path}: no aggregate rows")
    schemes = {row["scheme"] for row in rows}
    if len(schemes) != 1:
        raise PlotInputError(f"{path}: expected one scheme per file, found {sorted(schemes)}")
    try:
        means = tuple(float(row[f"{metric}_mean"]) for row in rows)
        sds = tuple(float(row[f"{metric}_sd"]) for row in rows)
    except ValueError as e:
        raise PlotInputError(f"{path}: bad numeric cell ({e})") from None
    return SchemeSeries(
        scheme=schemes.pop(),
        axis_values=tuple(row["axis_value"] for row in rows),
        means=means,
        sds=sds,
    )


def render(spec: FigureSpec) -> Path:
    """Write the figure for one metric; returns the output path."""
    series = [read_aggregate(p, spec.metric) for p in spec.csv_paths]
    reference = series[0].axis_values
    for s, path in zip(series, spec.csv_paths):
        if s.axis_values != reference:
            raise PlotInputError(
                f"{path}: axis values {s.axis_values} do not match "
                f"{spec.csv_paths[0]}'s {reference}"
            )

    # legend shows scheme tokens; duplicate tokens (e.g. sda at two rho
    # settings) fall back to the file stem for disambiguation
    tokens = [s.scheme for s in series]
    labels = [
        tok if tokens.count(tok) == 1 else f"{tok} ({Path(path).stem})"
        for tok, path in zip(tokens, spec.csv_paths)
    ]

    x = [float(v) for v in reference]
    fig, ax = plt.subplots(figsize=(6.4, 4.8), dpi=100)
    try:
        for idx, (s, label) in enumerate(zip(series, labels)):
            ax.errorbar(
                x,
                s.means,
                yerr=s.sds,
                label=label,
                color=_COLORS[idx % len(_COLORS)],
                marker=_MARKERS[idx % len(_MARKERS)],
                capsize=3,
                linewidth=1.5,
                markersize=5,
            )
        ax.set_xlabel(spec.axis_label)
        ax.set_ylabel(_Y_LABELS[spec.metric])
        ax.grid(True, alpha=0.3)
        ax.legend()
        fig.tight_layout()
        out = Path(spec.out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        # no Software/date metadata: reruns must be byte-identical
        fig.savefig(out, format="png", metadata={"Software": None})
    finally:
        plt.close(fig)
    return out


def all_metric_paths(out_path: str) -> dict[str, str]:
    """Derive the four per-metric output paths from one base path."""
    base = Path(out_path)
    return {m: str(base.with_name(f"{base.stem}_{m}{base.suffix or '.png'}")) for m in METRICS}
