"""Evaluation metrics: mean diversity, giant-component fraction, compromised
fraction, and defense cost."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import Graph, giant_component
from .paths import mean_software_diversity
from .software import NodeState

__all__ = ["MetricReport", "metric_sg", "metric_pc", "metric_dc", "mean_software_diversity"]


@dataclass(frozen=True)
class MetricReport:
    """One simulation's four headline numbers."""

    sd: float
    sg: float
    pc: float
    dc: float


def metric_sg(g: Graph, states: Sequence[NodeState]) -> float:
    """Fraction of all nodes inside the largest connected component of active,
    uncompromised nodes."""
    alive = [s.active and not s.compromised for s in states]
    if not alive:
        return 0.0
    return len(giant_component(g, alive)) / len(states)


def metric_pc(states: Sequence[NodeState]) -> float:
    """Fraction of nodes ever compromised (detected-and-removed included)."""
    if not states:
        return 0.0
    return sum(1 for s in states if s.compromised) / len(states)


def metric_dc(original: Graph, final: Graph, n_sf: int = 0) -> float:
    """Normalized edge-change volume between two graphs plus the fraction of
    nodes whose package was shuffled.

    The edge term is |symmetric difference| / (|edges(original)| +
    |edges(final)|), 0 when both graphs are empty.
    """
    if original.node_count != final.node_count:
        raise ValueError("graphs must share a node count")
    ea = original.edge_set()
    eb = final.edge_set()
    total = len(ea) + len(eb)
    change = len(ea ^ eb) / total if total else 0.0
    if n_sf:
        change += n_sf / original.node_count
    return change
