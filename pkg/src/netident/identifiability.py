"""Generic identifiability oracle and the structural checks behind it.

The oracle is a local rank test. For static edge gains, the input-output
matrix is ``M = C (I - G)^-1 B``. The derivative of ``M`` with respect to
the gain of edge ``j -> i`` is the rank-one matrix
``(C T)[:, i] (T B)[j, :]``. The network is declared generically
identifiable when the Jacobian stacked over all edges has full column rank
at a random draw of the gains.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .emp import Emp, NecessaryViolation
from .graph import NetworkPattern, classify, in_neighbors, reverse
from .instancing import DourcePartition, NumericInstance, derive_seed, sample_instance
from .numlin import DEFAULT_TOL, RankTolerance, numerical_rank, solve_least_structure

__all__ = [
    "EmptyEmp",
    "NotApplicable",
    "IdentVerdict",
    "StructureReport",
    "RowSolution",
    "jacobian",
    "generic_identifiability",
    "theorem41_emp",
    "theorem42_emp",
    "theorem41_structural_check",
    "solve_rows",
    "DourcePartition",
]


class EmptyEmp(ValueError):
    pass


class NotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class IdentVerdict:
    identifiable: bool
    achieved_rank: int
    required_rank: int
    trials: int
    per_trial_ranks: tuple[int, ...] = ()
    necessary_violations: tuple[NecessaryViolation, ...] = ()
    seed: int | None = None

    @property
    def oracle_run(self) -> bool:
        return self.trials > 0

    def describe(self) -> str:
        if self.identifiable:
            return f"generically identifiable (rank {self.achieved_rank}/{self.required_rank})"
        if not self.oracle_run:
            why = ", ".join(map(str, self.necessary_violations))
            return f"not generically identifiable: necessary conditions violated ({why})"
        return (
            f"not generically identifiable (numerical evidence at {self.trials} random points, "
            f"rank {self.achieved_rank}/{self.required_rank})"
        )


def jacobian(inst: NumericInstance, emp: Emp) -> np.ndarray:
    """Sensitivity of ``vec(C T B)`` to each edge gain, one column per edge.

    Rows follow measured-node-major order over (measured, excited) pairs;
    columns follow ``pattern.sorted_edges()``.
    """
    if not emp.excited or not emp.measured:
        raise EmptyEmp("EMP needs at least one excited and one measured node")
    emp.check_nodes(inst.pattern)
    n = inst.pattern.n
    CT = inst.T[np.array(sorted(emp.measured)) - 1, :]
    TB = inst.T[:, np.array(sorted(emp.excited)) - 1]
    edges = inst.pattern.sorted_edges()
    heads = np.array([i - 1 for _, i in edges])
    tails = np.array([j - 1 for j, _ in edges])
    J = np.einsum("pe,em->pme", CT[:, heads], TB[tails, :])
    return J.reshape(CT.shape[0] * TB.shape[1], len(edges))


def generic_identifiability(
    pattern: NetworkPattern,
    emp: Emp,
    trials: int = 3,
    seed: int = 42,
    tol: RankTolerance = DEFAULT_TOL,
) -> IdentVerdict:
    if trials < 1:
        raise ValueError("need at least one trial")
    required = len(pattern.edges)
    ranks = []
    for t in range(trials):
        inst = sample_instance(pattern, derive_seed(seed, t))
        ranks.append(numerical_rank(jacobian(inst, emp), tol))
    best = max(ranks)
    return IdentVerdict(
        identifiable=best == required,
        achieved_rank=best,
        required_rank=required,
        trials=trials,
        per_trial_ranks=tuple(ranks),
        seed=seed,
    )


def theorem41_emp(pattern: NetworkPattern, D: int) -> Emp:
    """EMP that measures but does not excite ``D``.

    Sources are only excited; sinks are only measured; every other node
    except ``D`` is both excited and measured.
    """
    cl = classify(pattern)
    if D in cl.sources:
        raise NotApplicable(f"node {D} is a source and must be excited")
    if D in cl.dources:
        raise NotApplicable(f"node {D} is a dource and must be excited")
    nodes = set(pattern.nodes)
    return Emp((nodes - cl.sinks) - {D}, nodes - cl.sources)


def theorem42_emp(pattern: NetworkPattern, D: int) -> Emp:
    """Dual of :func:`theorem41_emp`: excite but do not measure ``D``."""
    try:
        return theorem41_emp(reverse(pattern), D).swapped()
    except NotApplicable as exc:
        msg = str(exc).replace("source", "sink").replace("dource", "dink").replace("excited", "measured")
        raise NotApplicable(msg) from None


@dataclass(frozen=True)
class StructureReport:
    partition: DourcePartition
    tb_rank: int
    required_rank: int
    dependence_residual: float
    # per out-neighbor o: (o, row of T_A swapped out for T_D, rank of the result)
    reduced_ranks: tuple[tuple[int, int, int], ...] = field(default=())

    @property
    def tb_full_rank(self) -> bool:
        return self.tb_rank == self.required_rank

    @property
    def reduced_full_rank(self) -> bool:
        return all(r == self.required_rank for _, _, r in self.reduced_ranks)

    def passed(self, residual_tol: float = 1e-8) -> bool:
        return self.tb_full_rank and self.dependence_residual < residual_tol and self.reduced_full_rank


def theorem41_structural_check(
    inst: NumericInstance,
    D: int,
    tol: RankTolerance = DEFAULT_TOL,
) -> StructureReport:
    """Numerically verify the steps that make ``D`` dispensable as an excitation.

    With column ``D`` of ``T`` unknown, ``T_A`` is ``T`` without that column
    and ``T_B`` is ``T_A`` without row ``D``. Checks: ``T_B`` is nonsingular;
    row ``D`` of ``T_A`` equals ``G[D, :] @ T_A``; and, for every out-neighbor
    ``o``, swapping ``T_D`` in for the row of some in-neighbor of ``D`` that
    does not feed ``o`` keeps ``T_A`` at full rank.
    """
    pattern = inst.pattern
    cl = classify(pattern)
    if D in cl.sources or D in cl.dources:
        kind = "source" if D in cl.sources else "dource"
        raise NotApplicable(f"node {D} is a {kind}; no valid EMP leaves it unexcited")
    part = DourcePartition.for_node(pattern, D)
    n = pattern.n
    d = D - 1
    keep = [k for k in range(n) if k != d]
    TA = inst.T[:, keep]
    TB = TA[keep, :]
    resid = float(np.max(np.abs(TA[d] - inst.G[d, :] @ TA))) if keep else 0.0

    in_D = in_neighbors(pattern, D)
    reduced = []
    for o in part.O:
        missing = sorted(in_D - in_neighbors(pattern, o))
        # Prefer an in-neighbor outside O, as in the textbook partition.
        missing.sort(key=lambda v: (v in part.O, v))
        r = missing[0]
        rows = [k for k in keep if k != r - 1]
        mat = np.vstack([TA[d][None, :], TA[rows, :]])
        reduced.append((o, r, numerical_rank(mat, tol)))

    return StructureReport(
        partition=part,
        tb_rank=numerical_rank(TB, tol),
        required_rank=n - 1,
        dependence_residual=resid,
        reduced_ranks=tuple(reduced),
    )


@dataclass(frozen=True)
class RowSolution:
    node: int
    unknowns: tuple[int, ...]  # in-neighbors j of G[node, j]
    coefficients: np.ndarray
    rhs: np.ndarray
    values: np.ndarray


def solve_rows(inst: NumericInstance, known_columns: Iterable[int]) -> dict[int, RowSolution]:
    """Recover each row of ``G`` from ``G T~ = T~ - I~`` using only ``known_columns`` of ``T``.

    Every row of ``T`` is assumed known. Raises ``RankDeficient`` when a row
    system does not have a unique solution.
    """
    cols = np.array(sorted(set(known_columns))) - 1
    n = inst.pattern.n
    eye = np.eye(n)
    out = {}
    for i in inst.pattern.nodes:
        js = tuple(sorted(in_neighbors(inst.pattern, i)))
        if not js:
            continue
        A = inst.T[np.ix_(np.array(js) - 1, cols)]
        rhs = (inst.T[i - 1, cols] - eye[i - 1, cols])[None, :]
        x = solve_least_structure(A, rhs)[0]
        out[i] = RowSolution(i, js, A, rhs[0], x)
    return out
