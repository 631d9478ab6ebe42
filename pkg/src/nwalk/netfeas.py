"""Feasibility of encapsulation/decapsulation paths.

A node that can encapsulate contributes the step {1}, one that can
decapsulate {-1}, one that can do either {-1,1}, and a passive node {0}.
A path is feasible exactly when the resulting walk is an N-excursion: some
choice of operations never pops an empty stack and ends with the original
packet.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .intset import IntSet
from .walks import NStepSet, classify_walk, parse_weight


class NodeCapability(enum.Enum):
    ENCAP = "Encap"
    DECAP = "Decap"
    BOTH = "Both"
    PASSIVE = "Passive"

    @property
    def step(self) -> IntSet:
        return _STEPS[self]

    @classmethod
    def parse(cls, text: str) -> "NodeCapability":
        key = text.strip().lower()
        for c in cls:
            if c.value.lower() == key or c.name.lower() == key:
                return c
        raise ValueError(f"unknown capability {text!r}; expected Encap, Decap, Both or Passive")


_STEPS = {
    NodeCapability.ENCAP: IntSet({1}),
    NodeCapability.DECAP: IntSet({-1}),
    NodeCapability.BOTH: IntSet({-1, 1}),
    NodeCapability.PASSIVE: IntSet({0}),
}


@dataclass(frozen=True)
class NetworkPath:
    capabilities: tuple
    nodes: tuple | None = None

    def __post_init__(self):
        caps = tuple(c if isinstance(c, NodeCapability) else NodeCapability.parse(c)
                     for c in self.capabilities)
        if not caps:
            raise ValueError("a network path has at least one node")
        object.__setattr__(self, "capabilities", caps)
        if self.nodes is not None and len(self.nodes) != len(caps):
            raise ValueError("node names and capabilities differ in length")


def _as_path(path) -> NetworkPath:
    return path if isinstance(path, NetworkPath) else NetworkPath(tuple(path))


def path_to_nsteps(path) -> tuple:
    return tuple(c.step for c in _as_path(path).capabilities)


def feasibility_check(path) -> bool:
    return classify_walk(path_to_nsteps(path)).is_excursion


def compatible_excursions(walk) -> int:
    """Number of classical excursions that pick one element from each step."""
    heights = {0: 1}
    for s in walk:
        nxt = {}
        for h, c in heights.items():
            for e in s:
                if h + e >= 0:
                    nxt[h + e] = nxt.get(h + e, 0) + c
        heights = nxt
    return heights.get(0, 0)


# ---------------------------------------------------------------------------
# topology files


def load_topology(text: str) -> dict:
    """Undirected adjacency from lines "nodeA nodeB" ('#' starts a comment)."""
    adj = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"topology line {lineno}: expected 'nodeA nodeB', got {line!r}")
        a, b = parts
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    return adj


def load_capabilities(text: str) -> dict:
    """Node capabilities from lines "node KIND"."""
    caps = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"capability line {lineno}: expected 'node KIND', got {line!r}")
        caps[parts[0]] = NodeCapability.parse(parts[1])
    return caps


def path_from_nodes(nodes, capabilities: dict, topology: dict | None = None) -> NetworkPath:
    """Path through named nodes; unlabeled nodes are passive."""
    nodes = tuple(nodes)
    if topology is not None:
        for a, b in zip(nodes, nodes[1:]):
            if b not in topology.get(a, ()):
                raise ValueError(f"no link between {a} and {b}")
    caps = tuple(capabilities.get(v, NodeCapability.PASSIVE) for v in nodes)
    return NetworkPath(caps, nodes)


# ---------------------------------------------------------------------------
# random capabilities


def capability_step_set(distribution: dict) -> NStepSet:
    dist = {NodeCapability.parse(k) if isinstance(k, str) else k: parse_weight(v)
            for k, v in distribution.items()}
    if sum(dist.values()) != 1:
        raise ValueError("capability distribution must sum to 1")
    return NStepSet([(c.step, w) for c, w in dist.items() if w])


def theory_reference(distribution: dict, length: int):
    """Regime and asymptotic excursion probability when no node is passive."""
    from .dyck import DyckWeights, excursion_regime, excursion_prob_asym
    dist = {NodeCapability.parse(k) if isinstance(k, str) else k: parse_weight(v)
            for k, v in distribution.items()}
    if dist.get(NodeCapability.PASSIVE, 0):
        return None
    w = DyckWeights(dist.get(NodeCapability.DECAP, 0), dist.get(NodeCapability.ENCAP, 0),
                    dist.get(NodeCapability.BOTH, 0))
    regime = excursion_regime(w)
    if length % 2 or length == 0:
        value = 0.0 if length % 2 else 1.0
    else:
        value = excursion_prob_asym(w, length // 2)
    return {"family": "dyck", "regime": regime, "asymptotic": value}


def random_feasibility_rate(distribution: dict, path_length: int, runs: int, seed: int = 0):
    """(estimate, stderr, theory reference or None)."""
    from .montecarlo import SimConfig, estimate_class_probability
    S = capability_step_set(distribution)
    est, se = estimate_class_probability(SimConfig(S, path_length, runs, seed), "excursion")
    return est, se, theory_reference(distribution, path_length)
