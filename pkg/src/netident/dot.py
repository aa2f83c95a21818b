"""Graphviz DOT rendering with node classes highlighted."""

from __future__ import annotations

from .graph import NetworkPattern, classify

_STYLE = {
    "source": 'shape=box, style=filled, fillcolor="#9ecae1"',
    "sink": 'shape=box, style=filled, fillcolor="#fdd0a2"',
    "dource": 'shape=doublecircle, style=filled, fillcolor="#e34a33", fontcolor=white',
    "dink": 'shape=doublecircle, style=filled, fillcolor="#31a354", fontcolor=white',
    "dource+dink": 'shape=doublecircle, style="filled,bold", fillcolor="#756bb1", fontcolor=white',
    "internal": "shape=circle",
}


def node_role(pattern: NetworkPattern, node: int, cl=None) -> str:
    cl = cl or classify(pattern)
    if node in cl.sources:
        return "source"
    if node in cl.sinks:
        return "sink"
    is_dource, is_dink = node in cl.dources, node in cl.dinks
    if is_dource and is_dink:
        return "dource+dink"
    if is_dource:
        return "dource"
    if is_dink:
        return "dink"
    return "internal"


def to_dot(pattern: NetworkPattern, name: str = "network") -> str:
    cl = classify(pattern)
    safe = "".join(c if c.isalnum() or c == "_" else "_" for c in name) or "network"
    lines = [f"digraph {safe} {{", "  rankdir=LR;"]
    for v in pattern.nodes:
        role = node_role(pattern, v, cl)
        lines.append(f'  "{v}" [{_STYLE[role]}, tooltip="{role}", class="{role}"];')
    for j, i in sorted(pattern.edges):
        lines.append(f'  "{j}" -> "{i}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
