"""Attack-path enumeration and the per-node software-diversity score.

A node's diversity is the probability that it resists compromise along its
most vulnerable inbound attack paths: node-disjoint shortest paths are
enumerated greedily, scored as products of per-hop compromise probabilities,
and the top-l scores combine into ``prod(1 - vulnerability)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Graph
from .software import SoftwareCatalog

__all__ = [
    "AttackPath",
    "PATH_CAP",
    "enumerate_disjoint_paths",
    "path_vulnerability",
    "max_path_vulnerabilities",
    "software_diversity",
    "diversity_vector",
    "mean_software_diversity",
]

# At most this many disjoint paths are considered per target node.
PATH_CAP = 20


@dataclass(frozen=True)
class AttackPath:
    """Ordered node sequence from entry node to target, with the probability
    that an attacker starting at the entry compromises every later node."""

    nodes: tuple[int, ...]
    vulnerability: float


def path_vulnerability(nodes: Sequence[int], pkgs: Sequence[int], cat: SoftwareCatalog) -> float:
    """Product of per-hop compromise probabilities along a node sequence.

    The entry node is the attacker's position and contributes no factor; each
    later node contributes 1 when it shares its predecessor's package, else
    its own package vulnerability.
    """
    prob = 1.0
    for u, w in zip(nodes, nodes[1:]):
        if pkgs[u] != pkgs[w]:
            prob *= cat.vulnerability(int(pkgs[w]))
    return prob


def enumerate_disjoint_paths(
    g: Graph,
    target: int,
    k: int,
    pkgs: Sequence[int],
    cat: SoftwareCatalog,
    cap: int = PATH_CAP,
) -> list[AttackPath]:
    """Greedy node-disjoint enumeration of shortest attack paths into target.

    Repeatedly takes the shortest path from the target to any still-available
    node within k hops (ties: lexicographically smallest sequence) and retires
    that path's entry and interior nodes, until no path remains or ``cap``
    paths are found.

    The shortest available path is always a single hop: a longer path would
    start with an available neighbor of the target, which by itself forms a
    length-1 path, and retiring an entry never blocks the other neighbors.
    The loop therefore reduces to the target's neighbors in ascending order.
    """
    if k < 1:
        raise ValueError("hop cap must be >= 1")
    if cap < 1:
        raise ValueError("path cap must be >= 1")
    entries = sorted(g.neighbors(target))[:cap]
    return [
        AttackPath((j, target), path_vulnerability((j, target), pkgs, cat))
        for j in entries
    ]


def max_path_vulnerabilities(
    g: Graph,
    pkgs: Sequence[int],
    cat: SoftwareCatalog,
    k: int,
    k1_mode: str = "override",
) -> np.ndarray:
    """Per-node maximum inbound path vulnerability over paths of at most k-1
    hops (one hop is reserved for the final step into the node).

    With k=1 the literal rule leaves no hops and scores every node 0, which
    disables path-aware edge ranking; the default override scores the maximum
    single-hop compromise probability instead.  ``k1_mode`` selects
    "override" or "literal".
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k1_mode not in ("override", "literal"):
        raise ValueError(f"unknown k1_mode {k1_mode!r}")
    n = g.node_count
    pv = np.zeros(n, dtype=float)
    hop_cap = k - 1
    for i in range(n):
        if hop_cap == 0:
            if k1_mode == "literal":
                continue
            best = 0.0
            for j in g.neighbors(i):
                best = max(best, 1.0 if pkgs[j] == pkgs[i] else cat.vulnerability(int(pkgs[i])))
                if best == 1.0:
                    break
            pv[i] = best
        else:
            paths = enumerate_disjoint_paths(g, i, hop_cap, pkgs, cat)
            pv[i] = max((p.vulnerability for p in paths), default=0.0)
    return pv


def software_diversity(
    g: Graph,
    i: int,
    k: int,
    l: int,
    pkgs: Sequence[int],
    cat: SoftwareCatalog,
) -> float:
    """Diversity score of node i: prod(1 - v) over the l most vulnerable of
    its enumerated attack paths; 1.0 when no path reaches it."""
    if l < 1:
        raise ValueError("l must be >= 1")
    paths = enumerate_disjoint_paths(g, i, k, pkgs, cat)
    ranked = sorted(paths, key=lambda p: (-p.vulnerability, len(p.nodes), p.nodes))
    sd = 1.0
    for p in ranked[:l]:
        sd *= 1.0 - p.vulnerability
    return sd


def diversity_vector(
    g: Graph, pkgs: Sequence[int], cat: SoftwareCatalog, k: int, l: int
) -> np.ndarray:
    """software_diversity evaluated for every node."""
    return np.array(
        [software_diversity(g, i, k, l, pkgs, cat) for i in range(g.node_count)],
        dtype=float,
    )


def mean_software_diversity(sd: Sequence[float]) -> float:
    """Arithmetic mean of per-node diversity values."""
    if len(sd) == 0:
        raise ValueError("empty network has no mean diversity")
    return float(np.mean(sd))
