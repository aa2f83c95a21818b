"""Network topology: directed graphs over 1-based node ids and node classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

__all__ = [
    "PatternError",
    "NetworkPattern",
    "NodeClassification",
    "classify",
    "reverse",
    "in_neighbors",
    "out_neighbors",
    "random_pattern",
]


class PatternError(ValueError):
    """Raised when an edge list does not describe a valid network pattern."""


@dataclass(frozen=True)
class NetworkPattern:
    """Zero/nonzero structure of a hollow network matrix.

    An edge ``(j, i)`` means node ``j`` drives node ``i``, i.e. ``G[i, j] != 0``.
    Nodes are numbered ``1..n``.
    """

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        edge_list = [(int(a), int(b)) for a, b in edges]
        if int(n) < 1:
            raise PatternError(f"node count must be positive, got {n}")
        n = int(n)
        seen: set[tuple[int, int]] = set()
        for a, b in edge_list:
            if not (1 <= a <= n and 1 <= b <= n):
                raise PatternError(f"edge {a}->{b} references a node outside 1..{n}")
            if a == b:
                raise PatternError(f"edge {a}->{b}: self-loop forbidden")
            if (a, b) in seen:
                raise PatternError(f"duplicate edge {a}->{b}")
            seen.add((a, b))
        touched = {a for a, _ in seen} | {b for _, b in seen}
        isolated = sorted(set(range(1, n + 1)) - touched)
        if isolated:
            raise PatternError(f"isolated nodes not allowed: {isolated}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(seen))

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        """Edges ordered by (head, tail), i.e. row-major over the network matrix."""
        return sorted(self.edges, key=lambda e: (e[1], e[0]))

    def adjacency(self) -> np.ndarray:
        """Boolean ``n x n`` matrix with ``A[i-1, j-1]`` set for edge ``j -> i``."""
        adj = np.zeros((self.n, self.n), dtype=bool)
        for j, i in self.edges:
            adj[i - 1, j - 1] = True
        return adj

    def without_edge(self, tail: int, head: int) -> "NetworkPattern":
        return NetworkPattern(self.n, self.edges - {(tail, head)})

    def __repr__(self) -> str:
        body = ", ".join(f"{a}->{b}" for a, b in sorted(self.edges))
        return f"NetworkPattern(n={self.n}, edges=[{body}])"


@dataclass(frozen=True)
class NodeClassification:
    """Topological node classes.

    ``dources`` and ``dinks`` map each node to its lowest-numbered witness; the
    ``*_witnesses`` fields list every witness.
    """

    sources: frozenset[int]
    sinks: frozenset[int]
    internal: frozenset[int]
    dources: dict[int, int] = field(default_factory=dict)
    dinks: dict[int, int] = field(default_factory=dict)
    dource_witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)
    dink_witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)

    def must_excite(self) -> frozenset[int]:
        return self.sources | frozenset(self.dources)

    def must_measure(self) -> frozenset[int]:
        return self.sinks | frozenset(self.dinks)


def _check_node(pattern: NetworkPattern, node: int) -> None:
    if not 1 <= node <= pattern.n:
        raise IndexError(f"node {node} outside 1..{pattern.n}")


def in_neighbors(pattern: NetworkPattern, node: int) -> frozenset[int]:
    _check_node(pattern, node)
    return frozenset(j for j, i in pattern.edges if i == node)


def out_neighbors(pattern: NetworkPattern, node: int) -> frozenset[int]:
    _check_node(pattern, node)
    return frozenset(i for j, i in pattern.edges if j == node)


def classify(pattern: NetworkPattern) -> NodeClassification:
    """Split nodes into sources, sinks and internal nodes and find dources/dinks.

    An internal node ``d`` is a dource when some out-neighbor ``o`` receives an
    edge from every in-neighbor of ``d``; it is a dink when some in-neighbor
    sends an edge to every out-neighbor of ``d``. Only internal nodes qualify.
    """
    inn = {v: set() for v in pattern.nodes}
    out = {v: set() for v in pattern.nodes}
    for j, i in pattern.edges:
        out[j].add(i)
        inn[i].add(j)

    sources = frozenset(v for v in pattern.nodes if not inn[v])
    sinks = frozenset(v for v in pattern.nodes if not out[v])
    internal = frozenset(pattern.nodes) - sources - sinks

    dource_w: dict[int, tuple[int, ...]] = {}
    dink_w: dict[int, tuple[int, ...]] = {}
    for d in sorted(internal):
        ow = tuple(sorted(o for o in out[d] if inn[d] <= inn[o]))
        if ow:
            dource_w[d] = ow
        iw = tuple(sorted(i for i in inn[d] if out[d] <= out[i]))
        if iw:
            dink_w[d] = iw

    return NodeClassification(
        sources=sources,
        sinks=sinks,
        internal=internal,
        dources={d: w[0] for d, w in dource_w.items()},
        dinks={d: w[0] for d, w in dink_w.items()},
        dource_witnesses=dource_w,
        dink_witnesses=dink_w,
    )


def reverse(pattern: NetworkPattern) -> NetworkPattern:
    return NetworkPattern(pattern.n, ((i, j) for j, i in pattern.edges))


def random_pattern(
    n: int,
    density: float,
    rng: np.random.Generator,
    max_tries: int = 1000,
) -> NetworkPattern:
    """Draw each off-diagonal edge independently with probability ``density``.

    Draws with isolated nodes are rejected and redrawn.
    """
    if n < 2:
        raise ValueError("random patterns need at least two nodes")
    for _ in range(max_tries):
        mask = rng.random((n, n)) < density
        np.fill_diagonal(mask, False)
        if np.any(~(mask.any(axis=0) | mask.any(axis=1))):
            continue
        heads, tails = np.nonzero(mask)
        return NetworkPattern(n, zip((tails + 1).tolist(), (heads + 1).tolist()))
    raise RuntimeError(f"no pattern without isolated nodes after {max_tries} draws")
