"""Topology adaptation schemes.

The diversity-driven scheme works in two steps: first every edge joining two
same-package nodes is removed, then a signed fraction ``rho`` of edges is
added back (rho > 0) or additionally removed (rho < 0), choosing candidates
by their expected effect on node diversity under global and per-node budgets.
Random rewiring and least-common-package shuffling serve as baselines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph, ReachMask, reach_mask
from .paths import diversity_vector, max_path_vulnerabilities
from .software import SoftwareCatalog

__all__ = [
    "AdaptBudget",
    "EdgeCandidate",
    "RemovedEdgeLedger",
    "remove_same_package_edges",
    "edge_budgets",
    "rank_addition_candidates",
    "rank_removal_candidates",
    "apply_candidates",
    "diversity_adaptation",
    "random_adaptation",
    "least_common_shuffle",
    "no_adaptation",
]

# Guard for the removal-gain division; unreachable while sv <= 0.5 and pv <= 1.
_DIV_EPS = 1e-9


@dataclass(frozen=True)
class AdaptBudget:
    """Global edge-change allowance plus per-node allowances."""

    t_global: int
    t_local: tuple[int, ...]


@dataclass(frozen=True)
class EdgeCandidate:
    """Node pair (i < j) with the expected total diversity change of acting
    on the edge (sd_diff_sum)."""

    i: int
    j: int
    sd_diff_sum: float


@dataclass(frozen=True)
class RemovedEdgeLedger:
    """Per-node count of edges removed by the same-package sweep."""

    dn: tuple[int, ...]

    @property
    def removed_edges(self) -> int:
        return sum(self.dn) // 2


def remove_same_package_edges(g: Graph, pkgs: Sequence[int]) -> tuple[Graph, RemovedEdgeLedger]:
    """Drop every edge whose endpoints share a package; count removals per node."""
    dn = [0] * g.node_count
    kept = []
    for u, v in g.edges():
        if pkgs[u] == pkgs[v]:
            dn[u] += 1
            dn[v] += 1
        else:
            kept.append((u, v))
    return Graph(g.node_count, kept), RemovedEdgeLedger(tuple(dn))


def edge_budgets(
    ledger: RemovedEdgeLedger, g: Graph, rho: float, eab_base: str = "literal"
) -> AdaptBudget:
    """Size the adaptation budgets for a signed fraction rho of edges.

    The global budget is a fraction of the edges removed by the same-package
    sweep; ``eab_base="prose"`` switches the rho < 0 base to the edges
    remaining after the sweep instead.  Per-node budgets steer node degrees
    toward the expected average degree after adaptation and are then trimmed
    round-robin until their sum does not exceed the global budget.
    """
    if not (-1.0 <= rho <= 1.0):
        raise ValueError("rho must lie in [-1, 1]")
    if eab_base not in ("prose", "literal"):
        raise ValueError(f"unknown eab_base {eab_base!r}")
    n = g.node_count
    if rho == 0.0:
        return AdaptBudget(0, (0,) * n)

    if rho > 0 or eab_base == "literal":
        base = ledger.removed_edges
    else:
        base = g.edge_count
    t_global = math.floor(abs(rho) * base)

    kappa = (2 * g.edge_count + t_global) / n if n else 0.0
    if rho > 0:
        t_local = [math.floor(max(0.0, kappa - g.degree(i))) for i in range(n)]
    else:
        t_local = [math.floor(max(0.0, g.degree(i) - kappa)) for i in range(n)]

    surplus = sum(t_local) - t_global
    while surplus > 0:
        for i in range(n):
            if t_local[i] > 0 and surplus > 0:
                t_local[i] -= 1
                surplus -= 1
        if surplus > 0 and not any(t_local):
            break
    return AdaptBudget(t_global, tuple(t_local))


def _removal_gain(sd_i: float, sv_i: float, pv_j: float) -> float:
    denom = 1.0 - sv_i * pv_j
    if denom <= _DIV_EPS:
        return min(1.0, sd_i * (1.0 / _DIV_EPS - 1.0))
    return sd_i / denom - sd_i


def rank_addition_candidates(
    g: Graph,
    mask: ReachMask,
    sd: Sequence[float],
    pv: Sequence[float],
    pkgs: Sequence[int],
    cat: SoftwareCatalog,
) -> list[EdgeCandidate]:
    """Absent cross-package edges within the reach mask, ranked by how little
    adding them is expected to cost in total diversity (ascending)."""
    n = g.node_count
    sv = [cat.vulnerability(int(p)) for p in pkgs]
    out = []
    for i in range(n):
        reachable = np.nonzero(mask.pairs[i, i + 1 :])[0]
        adj = g.neighbors(i)
        for off in reachable:
            j = i + 1 + int(off)
            if j not in adj and pkgs[i] != pkgs[j]:
                drop = sd[i] * sv[i] * pv[j] + sd[j] * sv[j] * pv[i]
                out.append(EdgeCandidate(i, j, drop))
    out.sort(key=lambda c: (c.sd_diff_sum, c.i, c.j))
    return out


def rank_removal_candidates(
    g: Graph,
    sd: Sequence[float],
    pv: Sequence[float],
    pkgs: Sequence[int],
    cat: SoftwareCatalog,
) -> list[EdgeCandidate]:
    """Existing edges ranked by how much removing them is expected to gain in
    total diversity (descending)."""
    sv = [cat.vulnerability(int(p)) for p in pkgs]
    out = []
    for u, v in g.edges():
        gain = _removal_gain(sd[u], sv[u], pv[v]) + _removal_gain(sd[v], sv[v], pv[u])
        out.append(EdgeCandidate(u, v, gain))
    out.sort(key=lambda c: (-c.sd_diff_sum, c.i, c.j))
    return out


def _apply_candidates_detailed(
    g: Graph, candidates: Sequence[EdgeCandidate], budget: AdaptBudget, rho: float
) -> tuple[Graph, list[EdgeCandidate], list[EdgeCandidate]]:
    adding = rho > 0
    adj = g.copy_adjacency()
    t_local = list(budget.t_local)
    t_global = budget.t_global

    # pass 1: honor per-node budgets in rank order
    pass1 = []
    for c in candidates:
        if t_local[c.i] > 0 and t_local[c.j] > 0:
            if adding:
                adj[c.i].add(c.j)
                adj[c.j].add(c.i)
            else:
                adj[c.i].discard(c.j)
                adj[c.j].discard(c.i)
            t_local[c.i] -= 1
            t_local[c.j] -= 1
            t_global -= 1
            pass1.append(c)

    # pass 2: spend the remaining global budget, ignoring per-node budgets;
    # already-applied candidates are skipped by the edge-state check
    pass2 = []
    for c in candidates:
        if t_global <= 0:
            break
        if adding and c.j not in adj[c.i]:
            adj[c.i].add(c.j)
            adj[c.j].add(c.i)
            t_global -= 1
            pass2.append(c)
        elif not adding and c.j in adj[c.i]:
            adj[c.i].discard(c.j)
            adj[c.j].discard(c.i)
            t_global -= 1
            pass2.append(c)

    return Graph.from_adjacency(adj), pass1, pass2


def apply_candidates(
    g: Graph, candidates: Sequence[EdgeCandidate], budget: AdaptBudget, rho: float
) -> Graph:
    """Apply ranked candidates (add when rho > 0, remove when rho < 0) under
    the per-node and global budgets; two passes, see module docstring."""
    return _apply_candidates_detailed(g, candidates, budget, rho)[0]


def diversity_adaptation(
    g: Graph,
    pkgs: Sequence[int],
    cat: SoftwareCatalog,
    k: int,
    l: int,
    rho: float,
    pv_k1_mode: str = "override",
    eab_base: str = "literal",
) -> Graph:
    """Full diversity-driven adaptation: same-package sweep, then budgeted
    candidate application scored on the swept graph."""
    if not (-1.0 <= rho <= 1.0):
        raise ValueError("rho must lie in [-1, 1]")
    g1, ledger = remove_same_package_edges(g, pkgs)
    if rho == 0.0:
        return g1
    budget = edge_budgets(ledger, g1, rho, eab_base)
    sd = diversity_vector(g1, pkgs, cat, k, l)
    pv = max_path_vulnerabilities(g1, pkgs, cat, k, pv_k1_mode)
    if rho > 0:
        mask = reach_mask(g1, k)
        candidates = rank_addition_candidates(g1, mask, sd, pv, pkgs, cat)
    else:
        candidates = rank_removal_candidates(g1, sd, pv, pkgs, cat)
    return apply_candidates(g1, candidates, budget, rho)


def random_adaptation(g: Graph, pkgs: Sequence[int], rng: np.random.Generator) -> Graph:
    """Same-package sweep, then per node random cross-package replacement
    edges until its removal count is repaid or partners run out."""
    g1, ledger = remove_same_package_edges(g, pkgs)
    adj = g1.copy_adjacency()
    dn = list(ledger.dn)
    n = g1.node_count
    for i in range(n):
        if dn[i] <= 0:
            continue
        eligible = [
            j
            for j in range(n)
            if j != i and dn[j] > 0 and pkgs[j] != pkgs[i] and j not in adj[i]
        ]
        while dn[i] > 0 and eligible:
            pick = int(rng.integers(len(eligible)))
            j = eligible.pop(pick)
            adj[i].add(j)
            adj[j].add(i)
            dn[i] -= 1
            dn[j] -= 1
    return Graph.from_adjacency(adj)


def least_common_shuffle(
    pkgs: np.ndarray, g: Graph, cat: SoftwareCatalog
) -> tuple[np.ndarray, int]:
    """Every node synchronously adopts the package least frequent among its
    neighbors (isolated nodes: least common globally); ties prefer the lowest
    package id.  Returns the new assignment and the number of changed nodes."""
    snapshot = np.asarray(pkgs)
    counts_global = [0] * (cat.ns + 1)
    for p in snapshot:
        counts_global[int(p)] += 1
    global_pick = min(range(1, cat.ns + 1), key=lambda p: (counts_global[p], p))

    new_pkgs = snapshot.copy()
    changed = 0
    for i in range(g.node_count):
        neigh = g.neighbors(i)
        if neigh:
            counts = [0] * (cat.ns + 1)
            for j in neigh:
                counts[int(snapshot[j])] += 1
            pick = min(range(1, cat.ns + 1), key=lambda p: (counts[p], p))
        else:
            pick = global_pick
        if pick != int(snapshot[i]):
            new_pkgs[i] = pick
            changed += 1
    return new_pkgs, changed


def no_adaptation(g: Graph) -> Graph:
    """Leave the topology untouched."""
    return g
