"""Independent reference computations used only by the tests.

Nothing here calls into the package's linear algebra or classification code.
"""

from __future__ import annotations

import itertools

import numpy as np


def brute_classify(n: int, edges) -> dict:
    """Node classes read directly off the adjacency matrix, checking every witness candidate."""
    A = np.zeros((n + 1, n + 1), dtype=bool)  # A[j, i]: edge j -> i, 1-based
    for j, i in edges:
        A[j, i] = True
    nodes = range(1, n + 1)
    ins = {v: [u for u in nodes if A[u, v]] for v in nodes}
    outs = {v: [u for u in nodes if A[v, u]] for v in nodes}
    sources = {v for v in nodes if not ins[v]}
    sinks = {v for v in nodes if not outs[v]}
    dources, dinks = {}, {}
    for d in nodes:
        if d in sources or d in sinks:
            continue
        ws = [o for o in outs[d] if all(A[i, o] for i in ins[d])]
        if ws:
            dources[d] = min(ws)
        ws = [i for i in ins[d] if all(A[i, o] for o in outs[d])]
        if ws:
            dinks[d] = min(ws)
    return {"sources": sources, "sinks": sinks, "dources": dources, "dinks": dinks}


def leibniz_det(m) -> float:
    m = np.asarray(m, dtype=float)
    n = m.shape[0]
    total = 0.0
    for perm in itertools.permutations(range(n)):
        inversions = sum(perm[a] > perm[b] for a in range(n) for b in range(a + 1, n))
        total += (-1) ** inversions * np.prod([m[k, perm[k]] for k in range(n)])
    return total


def io_matrix(G, excited, measured) -> np.ndarray:
    n = G.shape[0]
    T = np.linalg.inv(np.eye(n) - G)
    return T[np.ix_(np.array(sorted(measured)) - 1, np.array(sorted(excited)) - 1)]


def complex_step_jacobian(G, edges, excited, measured, h: float = 1e-30) -> np.ndarray:
    """d vec(C (I-G)^-1 B) / d G_e via complex-step differentiation, columns in ``edges`` order."""
    G = np.asarray(G, dtype=complex)
    cols = []
    for j, i in edges:
        Gp = G.copy()
        Gp[i - 1, j - 1] += 1j * h
        cols.append((io_matrix(Gp, excited, measured).imag / h).ravel())
    return np.column_stack(cols)


def svd_rank(m, rel: float = 1e-9, floor: float = 1e-12) -> int:
    s = np.linalg.svd(np.asarray(m, dtype=float), compute_uv=False)
    if s.size == 0:
        return 0
    return int(np.sum(s > max(rel * s[0], floor)))


def oracle_rank(G, edges, excited, measured) -> int:
    """Jacobian rank of the edge-gain to input-output map, computed without the package."""
    return svd_rank(complex_step_jacobian(G, edges, excited, measured))
