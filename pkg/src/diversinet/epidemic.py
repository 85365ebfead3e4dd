"""Susceptible-infected-removed style epidemic over a graph, with attacker
learning and an imperfect detector.

Each round every active node is scanned in index order and draws one uniform
number.  A compromised node evades detection with probability 1 - gamma; if
it still has spread budget (two rounds per node) it attacks every susceptible
neighbor, succeeding with certainty on packages it can already exploit and
with the package's vulnerability otherwise.  A detected or spread-exhausted
node is deactivated and all its edges are cut.  Healthy nodes face the same
draw as a false positive when ``fp_mode`` is on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .software import NodeState, SoftwareCatalog

__all__ = ["EpidemicOutcome", "run_epidemic"]

_SPREAD_ROUNDS = 2


@dataclass
class EpidemicOutcome:
    final_states: list[NodeState]
    final_graph: Graph
    rounds: int


def _detach(adj: list[set[int]], i: int) -> None:
    for j in adj[i]:
        adj[j].discard(i)
    adj[i].clear()


def run_epidemic(
    g: Graph,
    states: list[NodeState],
    cat: SoftwareCatalog,
    gamma: float,
    rng: np.random.Generator,
    fp_mode: str = "on",
) -> EpidemicOutcome:
    """Run the epidemic to quiescence and return final states, the graph after
    all detector-driven edge cuts, and the number of rounds taken.

    Inputs are not mutated; compromise attempts within a round see earlier
    updates immediately.  All draws happen in scan order, so the run is
    deterministic for a fixed generator state.
    """
    if not (0.0 <= gamma <= 1.0):
        raise ValueError("gamma must be in [0, 1]")
    if fp_mode not in ("on", "off"):
        raise ValueError(f"unknown fp_mode {fp_mode!r}")
    false_positives = fp_mode == "on"

    n = g.node_count
    adj = g.copy_adjacency()
    st = [
        NodeState(
            package=s.package,
            vulnerability=s.vulnerability,
            active=s.active,
            compromised=s.compromised,
            diversity=s.diversity,
            learned=s.learned.copy(),
        )
        for s in states
    ]
    spread = [0] * n

    def attacks_pending() -> bool:
        return any(
            s.active and s.compromised and spread[i] < _SPREAD_ROUNDS
            for i, s in enumerate(st)
        )

    rounds = 0
    max_rounds = 3 * n + 1
    while attacks_pending():
        rounds += 1
        if rounds > max_rounds:
            raise RuntimeError("epidemic failed to terminate")
        for i in range(n):
            s = st[i]
            if not s.active:
                continue
            r1 = rng.random()
            if s.compromised:
                if r1 > gamma and spread[i] < _SPREAD_ROUNDS:
                    spread[i] += 1
                    for j in sorted(adj[i]):
                        t = st[j]
                        if not t.active or t.compromised:
                            continue
                        if s.learned[t.package - 1]:
                            hit = True
                        else:
                            hit = rng.random() < cat.vulnerability(t.package)
                            if hit:
                                s.learned[t.package - 1] = True
                        if hit:
                            t.compromised = True
                            # the attack payload carries every exploit the
                            # attacker holds, so the new bot inherits them
                            t.learned |= s.learned
                            t.learned[t.package - 1] = True
                else:
                    s.active = False
                    _detach(adj, i)
            elif false_positives and r1 > gamma:
                s.active = False
                _detach(adj, i)

    return EpidemicOutcome(st, Graph.from_adjacency(adj), rounds)
