"""Undirected simple graphs: construction, file ingestion, random generation,
and the structural queries (components, k-hop neighborhoods, reach masks) the
rest of the toolkit is built on.

Graphs are immutable after construction; every transformation produces a new
``Graph``.  Node ids are always dense integers ``0..n-1``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "ReachMask",
    "EdgeListParseError",
    "load_edge_list",
    "parse_edge_list",
    "serialize_edge_list",
    "generate_er",
    "giant_component",
    "khop_neighborhood",
    "reach_mask",
    "derive_degree_rank_subgraph",
]

# Canonical header written by serialize_edge_list.  When present on load, node
# ids are taken as already dense (0..n-1), which keeps isolated nodes and makes
# serialize -> load an exact round trip.
_HEADER_RE = re.compile(r"^#\s*(\d+)\s+nodes?,\s*(\d+)\s+edges?\s*$")


class EdgeListParseError(ValueError):
    """Raised for malformed edge-list input, carrying the offending line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class Graph:
    """Undirected simple graph over nodes ``0..n-1``.

    Self-loops are rejected, parallel edges collapse.  Treat instances as
    immutable: mutating helpers return adjacency copies for private editing.
    """

    __slots__ = ("_n", "_adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError("node count must be >= 0")
        self._n = n
        self._adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            self._add_edge(u, v)

    def _add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop ({u},{u}) not allowed")
        if not (0 <= u < self._n and 0 <= v < self._n):
            raise ValueError(f"edge ({u},{v}) endpoint out of range for n={self._n}")
        self._adj[u].add(v)
        self._adj[v].add(u)

    @classmethod
    def from_adjacency(cls, adj: Sequence[set[int]]) -> "Graph":
        """Build from an adjacency-set list (must already be symmetric)."""
        g = cls(len(adj))
        g._adj = [set(neigh) for neigh in adj]
        return g

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self._adj) // 2

    def degree(self, i: int) -> int:
        return len(self._adj[i])

    def neighbors(self, i: int) -> set[int]:
        """Neighbor set of node i (do not mutate)."""
        return self._adj[i]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._adj[i]

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, ascending."""
        for u in range(self._n):
            for v in sorted(self._adj[u]):
                if u < v:
                    yield (u, v)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(u, v) for u in range(self._n) for v in self._adj[u] if u < v}

    def copy_adjacency(self) -> list[set[int]]:
        """Mutable adjacency copy for per-run private edits."""
        return [set(s) for s in self._adj]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._adj == other._adj

    def __hash__(self):
        return hash((self._n, frozenset(self.edge_set())))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.edge_count})"


class ReachMask:
    """Symmetric, reflexive boolean relation: which node pairs lie within a
    bounded shortest-path distance of each other."""

    __slots__ = ("pairs",)

    def __init__(self, pairs: np.ndarray):
        self.pairs = pairs

    def covers(self, i: int, j: int) -> bool:
        return bool(self.pairs[i, j])


def parse_edge_list(text: str) -> tuple[Graph, dict[int, int]]:
    """Parse line-oriented edge-list text into a simplified graph.

    Returns ``(graph, id_map)`` where ``id_map`` maps original node ids to the
    compact ids used in the graph.  Lines starting with '#' are comments; a
    canonical "# N nodes, M edges" header switches to identity ids (preserving
    isolated nodes).  Other lines must hold exactly two integer tokens.
    Self-loops are dropped and duplicate edges collapsed.
    """
    declared_n: int | None = None
    id_map: dict[int, int] = {}
    edges: set[tuple[int, int]] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if declared_n is None and not id_map:
                m = _HEADER_RE.match(line)
                if m:
                    declared_n = int(m.group(1))
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(line_no, f"expected two integers, got {raw!r}")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(line_no, f"expected two integers, got {raw!r}") from None

        if declared_n is not None:
            if not (0 <= a < declared_n and 0 <= b < declared_n):
                raise EdgeListParseError(
                    line_no, f"node id outside declared range 0..{declared_n - 1}"
                )
            u, v = a, b
        else:
            for orig in (a, b):
                if orig not in id_map:
                    id_map[orig] = len(id_map)
            u, v = id_map[a], id_map[b]
        if u == v:
            continue
        edges.add((min(u, v), max(u, v)))

    n = declared_n if declared_n is not None else len(id_map)
    if declared_n is not None:
        id_map = {i: i for i in range(n)}
    return Graph(n, edges), id_map


def load_edge_list(text: str) -> Graph:
    """Parse edge-list text; see :func:`parse_edge_list`."""
    return parse_edge_list(text)[0]


def serialize_edge_list(g: Graph) -> str:
    """Canonical text form: header comment plus "u v" lines, u < v, ascending."""
    lines = [f"# {g.node_count} nodes, {g.edge_count} edges"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def generate_er(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p) random graph; each unordered pair drawn independently.

    Pair order is (i, j) with i < j, lexicographic, so output is deterministic
    for a fixed generator state.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (0.0 <= p <= 1.0):
        raise ValueError("p must be in [0, 1]")
    m = n * (n - 1) // 2
    keep = rng.random(m) < p
    edges = []
    idx = 0
    for i in range(n):
        for j in range(i + 1, n):
            if keep[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(n, edges)


def giant_component(g: Graph, alive: Sequence[bool]) -> set[int]:
    """Largest connected component of the subgraph induced by alive nodes.

    Ties go to the component containing the smallest node index.
    """
    if len(alive) != g.node_count:
        raise ValueError("alive mask length must equal node count")
    seen = [False] * g.node_count
    best: set[int] = set()
    for start in range(g.node_count):
        if seen[start] or not alive[start]:
            continue
        comp = {start}
        seen[start] = True
        stack = [start]
        while stack:
            u = stack.pop()
            for v in g.neighbors(u):
                if alive[v] and not seen[v]:
                    seen[v] = True
                    comp.add(v)
                    stack.append(v)
        if len(comp) > len(best):
            best = comp
    return best


def khop_neighborhood(g: Graph, i: int, k: int) -> set[int]:
    """All nodes within shortest-path distance k of node i, including i."""
    if k < 0:
        raise ValueError("k must be >= 0")
    reached = {i}
    frontier = [i]
    for _ in range(k):
        nxt = []
        for u in frontier:
            for v in g.neighbors(u):
                if v not in reached:
                    reached.add(v)
                    nxt.append(v)
        if not nxt:
            break
        frontier = nxt
    return reached


def reach_mask(g: Graph, k: int) -> ReachMask:
    """Pairs within distance 2k of each other (reflexive, symmetric).

    Computed by frontier expansion to depth 2k per node; equivalent to the
    boolean closure of the (A+I)^(2k) adjacency power without forming it.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = g.node_count
    pairs = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in khop_neighborhood(g, i, 2 * k):
            pairs[i, j] = True
    return ReachMask(pairs)


def derive_degree_rank_subgraph(g: Graph, lo_rank: int, hi_rank: int) -> Graph:
    """Induce the subgraph on nodes ranked [lo_rank, hi_rank] by descending
    degree (ties by ascending node index) and return its largest connected
    component with compacted ids (ascending original-id order)."""
    n = g.node_count
    if not (1 <= lo_rank <= hi_rank <= n):
        raise ValueError(f"require 1 <= lo_rank <= hi_rank <= {n}")
    order = sorted(range(n), key=lambda i: (-g.degree(i), i))
    chosen = set(order[lo_rank - 1 : hi_rank])
    if not chosen:
        raise ValueError("degree-rank window selects no nodes")

    # largest component within the induced subgraph
    comp = giant_component(g, [i in chosen for i in range(n)])
    if not comp:
        # window non-empty but all selected nodes isolated in the induced
        # subgraph cannot happen (singletons are components); guard anyway
        raise ValueError("induced subgraph is empty")
    relabel = {orig: new for new, orig in enumerate(sorted(comp))}
    edges = [
        (relabel[u], relabel[v])
        for u, v in g.edges()
        if u in relabel and v in relabel
    ]
    return Graph(len(relabel), edges)


def mean_degree(g: Graph) -> float:
    """Average node degree (2m/n); 0 for the empty graph."""
    if g.node_count == 0:
        return 0.0
    return 2.0 * g.edge_count / g.node_count
