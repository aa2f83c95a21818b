"""Excitation and measurement patterns and their topological necessary conditions."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import NetworkPattern, NodeClassification, classify

__all__ = [
    "Emp",
    "ViolationKind",
    "NecessaryViolation",
    "necessary_check",
    "cardinality_bounds",
    "full_emp",
]


@dataclass(frozen=True)
class Emp:
    excited: frozenset[int]
    measured: frozenset[int]

    def __init__(self, excited: Iterable[int], measured: Iterable[int]):
        object.__setattr__(self, "excited", frozenset(int(v) for v in excited))
        object.__setattr__(self, "measured", frozenset(int(v) for v in measured))

    @property
    def cardinality(self) -> int:
        return len(self.excited) + len(self.measured)

    def check_nodes(self, pattern: NetworkPattern) -> None:
        bad = sorted(v for v in self.excited | self.measured if not 1 <= v <= pattern.n)
        if bad:
            raise ValueError(f"EMP references nodes outside 1..{pattern.n}: {bad}")

    def excitation_matrix(self, n: int) -> np.ndarray:
        """``n x |B|`` selection matrix, one unit column per excited node."""
        cols = sorted(self.excited)
        B = np.zeros((n, len(cols)))
        B[np.array(cols, dtype=int) - 1, np.arange(len(cols))] = 1.0
        return B

    def measurement_matrix(self, n: int) -> np.ndarray:
        rows = sorted(self.measured)
        C = np.zeros((len(rows), n))
        C[np.arange(len(rows)), np.array(rows, dtype=int) - 1] = 1.0
        return C

    def swapped(self) -> "Emp":
        """The dual pattern: measure what was excited and vice versa."""
        return Emp(self.measured, self.excited)

    def sort_key(self) -> tuple:
        return (self.cardinality, tuple(sorted(self.excited)), tuple(sorted(self.measured)))

    def __str__(self) -> str:
        b = ", ".join(map(str, sorted(self.excited)))
        c = ", ".join(map(str, sorted(self.measured)))
        return f"B={{{b}}} C={{{c}}}"


def full_emp(pattern: NetworkPattern) -> Emp:
    nodes = list(pattern.nodes)
    return Emp(nodes, nodes)


class ViolationKind(str, enum.Enum):
    NO_EXCITATION = "NoExcitation"
    NO_MEASUREMENT = "NoMeasurement"
    SOURCE_NOT_EXCITED = "SourceNotExcited"
    DOURCE_NOT_EXCITED = "DourceNotExcited"
    SINK_NOT_MEASURED = "SinkNotMeasured"
    DINK_NOT_MEASURED = "DinkNotMeasured"
    NODE_UNCOVERED = "NodeUncovered"


_NODE_KINDS = frozenset(ViolationKind) - {ViolationKind.NO_EXCITATION, ViolationKind.NO_MEASUREMENT}


@dataclass(frozen=True)
class NecessaryViolation:
    kind: ViolationKind
    node: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ViolationKind(self.kind))
        if (self.node is None) == (self.kind in _NODE_KINDS):
            raise ValueError(f"{self.kind.value} {'needs' if self.node is None else 'takes no'} node")

    def __str__(self) -> str:
        return self.kind.value if self.node is None else f"{self.kind.value}({self.node})"


def necessary_check(
    pattern: NetworkPattern,
    emp: Emp,
    classification: NodeClassification | None = None,
) -> list[NecessaryViolation]:
    """Topological conditions every valid EMP satisfies; an empty list means none is violated.

    Sources and dources must be excited, sinks and dinks measured, every node
    covered, and both sets nonempty.
    """
    emp.check_nodes(pattern)
    cl = classification or classify(pattern)
    out: list[NecessaryViolation] = []
    if not emp.excited:
        out.append(NecessaryViolation(ViolationKind.NO_EXCITATION))
    if not emp.measured:
        out.append(NecessaryViolation(ViolationKind.NO_MEASUREMENT))
    V = ViolationKind
    for kind, nodes, target in (
        (V.SOURCE_NOT_EXCITED, cl.sources, emp.excited),
        (V.DOURCE_NOT_EXCITED, cl.dources, emp.excited),
        (V.SINK_NOT_MEASURED, cl.sinks, emp.measured),
        (V.DINK_NOT_MEASURED, cl.dinks, emp.measured),
    ):
        out.extend(NecessaryViolation(kind, v) for v in sorted(nodes) if v not in target)
    covered = emp.excited | emp.measured
    out.extend(NecessaryViolation(V.NODE_UNCOVERED, v) for v in pattern.nodes if v not in covered)
    return out


def cardinality_bounds(pattern: NetworkPattern) -> tuple[int, int]:
    """``(n, 2n - f - s)`` with ``f`` sources and ``s`` sinks."""
    cl = classify(pattern)
    n = pattern.n
    return n, 2 * n - len(cl.sources) - len(cl.sinks)
