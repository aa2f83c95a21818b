"""Random numeric network matrices consistent with a pattern."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import NetworkPattern, classify, in_neighbors, out_neighbors
from .numlin import DEFAULT_TOL, RankTolerance, SingularMatrix, determinant, invert, numerical_rank

__all__ = [
    "WEIGHT_RANGE",
    "WellPosednessFailure",
    "NumericInstance",
    "IdentityReport",
    "DourcePartition",
    "DependenceReport",
    "NotADource",
    "sample_instance",
    "instance_from_matrix",
    "check_identities",
    "dependence_witness",
    "derive_seed",
]

WEIGHT_RANGE = (0.25, 1.75)
MIN_ABS_DET = 1e-6
MAX_ATTEMPTS = 32


class WellPosednessFailure(RuntimeError):
    pass


class NotADource(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class NumericInstance:
    pattern: NetworkPattern
    G: np.ndarray
    T: np.ndarray
    seed: int

    def g(self, i: int, j: int) -> float:
        """Entry ``G_ij`` with 1-based indices (weight of edge ``j -> i``)."""
        return float(self.G[i - 1, j - 1])

    def t(self, i: int, j: int) -> float:
        return float(self.T[i - 1, j - 1])


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for the stream ``(seed, *keys)``."""
    ss = np.random.SeedSequence([int(seed) & (2**64 - 1), *keys])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _stream(seed: int, attempt: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed) & (2**64 - 1), attempt])))


def instance_from_matrix(pattern: NetworkPattern, G, seed: int = 0) -> NumericInstance:
    """Wrap a caller-supplied ``G``; zero structure must match ``pattern``."""
    G = np.array(G, dtype=float)
    if G.shape != (pattern.n, pattern.n):
        raise ValueError(f"G must be {pattern.n}x{pattern.n}, got {G.shape}")
    if not np.array_equal(G != 0, pattern.adjacency()):
        raise ValueError("nonzero structure of G does not match the pattern")
    T = invert(np.eye(pattern.n) - G)
    return NumericInstance(pattern, G, T, seed)


def sample_instance(pattern: NetworkPattern, seed: int) -> NumericInstance:
    """Draw edge weights uniformly from ``WEIGHT_RANGE`` with a random sign.

    Draws with ``|det(I - G)| < 1e-6`` are redrawn from a fresh stream, up to
    32 attempts.
    """
    edges = pattern.sorted_edges()
    rows = np.array([i - 1 for _, i in edges])
    cols = np.array([j - 1 for j, _ in edges])
    lo, hi = WEIGHT_RANGE
    eye = np.eye(pattern.n)
    for attempt in range(MAX_ATTEMPTS):
        rng = _stream(seed, attempt)
        mags = rng.uniform(lo, hi, size=len(edges))
        signs = rng.choice((-1.0, 1.0), size=len(edges))
        G = np.zeros((pattern.n, pattern.n))
        G[rows, cols] = mags * signs
        if abs(determinant(eye - G)) < MIN_ABS_DET:
            continue
        try:
            T = invert(eye - G)
        except SingularMatrix:
            continue
        return NumericInstance(pattern, G, T, seed)
    raise WellPosednessFailure(f"I - G stayed near-singular over {MAX_ATTEMPTS} draws for {pattern!r}")


@dataclass(frozen=True)
class IdentityReport:
    diagonal: float  # T_ii = 1 + sum_j T_ij G_ji
    off_diagonal: float  # T_ik = sum_j T_ij G_jk, k != i
    commutation: float  # G T = T G
    scale: float

    @property
    def max_residual(self) -> float:
        return max(self.diagonal, self.off_diagonal, self.commutation)

    @property
    def max_relative(self) -> float:
        return self.max_residual / self.scale


def check_identities(inst: NumericInstance) -> IdentityReport:
    G, T = inst.G, inst.T
    n = G.shape[0]
    TG = T @ G
    R = np.abs(T - np.eye(n) - TG)
    diag = float(np.max(np.diag(R)))
    off = R[~np.eye(n, dtype=bool)]
    off_max = float(np.max(off)) if off.size else 0.0
    comm = float(np.max(np.abs(G @ T - TG)))
    scale = max(1.0, float(np.max(np.abs(T))) * max(1.0, float(np.max(np.abs(G)))))
    return IdentityReport(diag, off_max, comm, scale)


@dataclass(frozen=True)
class DourcePartition:
    """Node split around ``D``: one or more out-neighbors ``O``, in-neighbors ``I``, rest ``S``."""

    D: int
    O: tuple[int, ...]
    I: tuple[int, ...]
    S: tuple[int, ...]

    @classmethod
    def for_dource(cls, pattern: NetworkPattern, D: int, witness: int | None = None) -> "DourcePartition":
        """The split with a single witness out-neighbor fed by every in-neighbor of ``D``."""
        cl = classify(pattern)
        if D not in cl.dources:
            raise NotADource(f"node {D} is not a dource")
        O = cl.dources[D] if witness is None else witness
        if O not in cl.dource_witnesses[D]:
            raise NotADource(f"node {O} is not a witness out-neighbor of dource {D}")
        I = tuple(sorted(in_neighbors(pattern, D)))
        S = tuple(v for v in pattern.nodes if v not in (D, O, *I))
        return cls(D, (O,), I, S)

    @classmethod
    def for_node(cls, pattern: NetworkPattern, D: int) -> "DourcePartition":
        """All out-neighbors in ``O``; ``I`` holds in-neighbors that are not also out-neighbors."""
        outs = out_neighbors(pattern, D)
        O = tuple(sorted(outs))
        I = tuple(sorted(in_neighbors(pattern, D) - outs))
        S = tuple(v for v in pattern.nodes if v != D and v not in outs and v not in I)
        return cls(D, O, I, S)

    def validate(self, pattern: NetworkPattern) -> None:
        parts = [self.D, *self.O, *self.I, *self.S]
        if sorted(parts) != list(pattern.nodes):
            raise ValueError(f"{self} does not partition nodes 1..{pattern.n}")

    def columns(self) -> list[int]:
        return [*self.O, *self.I, *self.S]


@dataclass(frozen=True)
class DependenceReport:
    partition: DourcePartition
    coefficients: tuple[float, ...]  # G_{D, I}
    residual: float
    rank: int
    required_rank: int

    @property
    def rank_deficient(self) -> bool:
        return self.rank < self.required_rank


def dependence_witness(
    inst: NumericInstance,
    D: int,
    partition: DourcePartition | None = None,
    tol: RankTolerance = DEFAULT_TOL,
) -> DependenceReport:
    """Show that row ``D`` of ``T`` (column ``D`` dropped) is spanned by the rows of its in-neighbors.

    The block ``[[T_D,(O I S)], [T_I,(O I S)]]`` is therefore rank deficient
    whenever ``D`` is a dource.
    """
    pattern = inst.pattern
    if partition is None:
        partition = DourcePartition.for_dource(pattern, D)
    else:
        if partition.D != D:
            raise ValueError(f"partition is built around node {partition.D}, not {D}")
        partition.validate(pattern)
        cl = classify(pattern)
        if D not in cl.dources:
            raise NotADource(f"node {D} is not a dource")
        if len(partition.O) != 1 or partition.O[0] not in cl.dource_witnesses[D]:
            raise NotADource(f"{partition.O} is not a witness out-neighbor of dource {D}")
    cols = np.array(partition.columns()) - 1
    rows_I = np.array(partition.I, dtype=int) - 1
    d = D - 1
    g_DI = inst.G[d, rows_I]
    T_D = inst.T[d, cols]
    T_I = inst.T[np.ix_(rows_I, cols)]
    resid = float(np.max(np.abs(T_D - g_DI @ T_I)))
    block = np.vstack([T_D[None, :], T_I])
    return DependenceReport(
        partition=partition,
        coefficients=tuple(float(x) for x in g_DI),
        residual=resid,
        rank=numerical_rank(block, tol),
        required_rank=1 + len(partition.I),
    )
