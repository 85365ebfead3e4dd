"""Per-node software state: package catalog, package assignment, attacker
seeding, and the single-hop compromise probability rule."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DEFAULT_SV",
    "SoftwareCatalog",
    "NodeState",
    "default_catalog",
    "assign_packages",
    "build_states",
    "hop_vulnerability",
    "seed_attackers",
    "round_half_up",
]

# Default per-package vulnerability probabilities; a catalog with ns packages
# uses the first ns entries.
DEFAULT_SV: tuple[float, ...] = (0.41, 0.35, 0.48, 0.22, 0.16, 0.19, 0.12)


@dataclass(frozen=True)
class SoftwareCatalog:
    """Available software packages (ids 1..ns) and their vulnerabilities."""

    ns: int
    sv: tuple[float, ...]

    def __post_init__(self):
        if self.ns < 1:
            raise ValueError("catalog needs at least one package")
        if len(self.sv) != self.ns:
            raise ValueError("sv length must equal ns")
        if any(not (0.0 < v <= 1.0) for v in self.sv):
            raise ValueError("vulnerabilities must lie in (0, 1]")

    def vulnerability(self, package: int) -> float:
        """Vulnerability of a package id (1-based)."""
        return self.sv[package - 1]


def default_catalog(ns: int) -> SoftwareCatalog:
    if ns > len(DEFAULT_SV):
        raise ValueError(f"default vulnerabilities cover at most {len(DEFAULT_SV)} packages")
    return SoftwareCatalog(ns, DEFAULT_SV[:ns])


@dataclass
class NodeState:
    """Mutable per-node simulation state.

    ``learned`` marks package vulnerabilities this node can exploit when it
    acts as an attacker; a compromised node always knows its own package.
    """

    package: int
    vulnerability: float
    active: bool = True
    compromised: bool = False
    diversity: float = 1.0
    learned: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))


def assign_packages(n: int, cat: SoftwareCatalog, rng: np.random.Generator) -> np.ndarray:
    """Draw each node's package id independently, uniformly from 1..ns."""
    if cat.ns < 1:
        raise ValueError("catalog must have at least one package")
    return rng.integers(1, cat.ns + 1, size=n)


def build_states(pkgs: np.ndarray, cat: SoftwareCatalog) -> list[NodeState]:
    """Fresh all-healthy node states for a package assignment."""
    return [
        NodeState(
            package=int(p),
            vulnerability=cat.vulnerability(int(p)),
            learned=np.zeros(cat.ns, dtype=bool),
        )
        for p in pkgs
    ]


def hop_vulnerability(
    attacker_pkg: int,
    target: NodeState,
    cat: SoftwareCatalog,
    learned: np.ndarray | None = None,
) -> float:
    """Probability that one compromise attempt over an edge succeeds.

    Same package, or a learned vulnerability of the target's package, grants
    certainty; otherwise the target's package vulnerability applies.  Without
    a ``learned`` vector (static path scoring) only the same-package rule
    grants certainty.
    """
    if attacker_pkg == target.package:
        return 1.0
    if learned is not None and bool(learned[target.package - 1]):
        return 1.0
    return cat.vulnerability(target.package)


def round_half_up(x: float) -> int:
    """Round to nearest integer, halves up (0.5 -> 1)."""
    return int(np.floor(x + 0.5))


def seed_attackers(
    states: list[NodeState], pa: float, rng: np.random.Generator
) -> list[NodeState]:
    """Mark exactly round(pa*n) distinct nodes as initial attackers.

    Seeds become compromised, stay active, and know their own package's
    vulnerability.  The list is updated in place and returned.
    """
    if not (0.0 <= pa <= 1.0):
        raise ValueError("pa must be in [0, 1]")
    n = len(states)
    count = round_half_up(pa * n)
    if count > 0:
        chosen = rng.choice(n, size=count, replace=False)
    else:
        chosen = []
    for i in chosen:
        s = states[int(i)]
        s.compromised = True
        s.active = True
        s.learned[s.package - 1] = True
    return states
