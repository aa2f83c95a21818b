"""Small dense linear algebra with an explicit pivot tolerance.

Matrices here are ``numpy`` float arrays. Ranks are decided by Gaussian
elimination with partial pivoting: a pivot counts when its magnitude exceeds
``rel_tol * max|m| * max(rows, cols)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "RankTolerance",
    "SingularMatrix",
    "RankDeficient",
    "as_matrix",
    "lu_factor",
    "determinant",
    "invert",
    "numerical_rank",
    "solve_least_structure",
]


@dataclass(frozen=True)
class RankTolerance:
    rel_tol: float = 1e-9

    def threshold(self, m: np.ndarray) -> float:
        if m.size == 0:
            return 0.0
        return self.rel_tol * float(np.max(np.abs(m))) * max(m.shape)


DEFAULT_TOL = RankTolerance()


class SingularMatrix(ArithmeticError):
    def __init__(self, min_pivot: float):
        super().__init__(f"matrix is singular to tolerance (smallest pivot {min_pivot:.3e})")
        self.min_pivot = min_pivot


class RankDeficient(ArithmeticError):
    def __init__(self, rank: int, required: int):
        super().__init__(f"coefficient matrix has rank {rank}, needs {required}")
        self.rank = rank
        self.required = required


def as_matrix(m) -> np.ndarray:
    a = np.array(m, dtype=float, copy=True)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite")
    return a


def lu_factor(m, tol: RankTolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray, float]:
    """Factor ``P m = L U`` for square ``m``.

    Returns the packed ``LU`` array (unit lower factor below the diagonal), the
    row permutation and its sign. Raises ``SingularMatrix`` on a pivot at or
    below the tolerance threshold.
    """
    a = as_matrix(m)
    n, cols = a.shape
    if n != cols:
        raise ValueError(f"LU needs a square matrix, got {a.shape}")
    thresh = tol.threshold(a)
    perm = np.arange(n)
    sign = 1.0
    min_pivot = np.inf
    for k in range(n):
        p = k + int(np.argmax(np.abs(a[k:, k])))
        piv = abs(a[p, k])
        min_pivot = min(min_pivot, piv)
        if piv <= thresh or piv == 0.0:
            raise SingularMatrix(piv)
        if p != k:
            a[[k, p]] = a[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        a[k + 1 :, k] /= a[k, k]
        a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
    return a, perm, sign


def determinant(m) -> float:
    try:
        lu, _, sign = lu_factor(m, RankTolerance(0.0))
    except SingularMatrix:
        return 0.0
    return sign * float(np.prod(np.diag(lu)))


def invert(m, tol: RankTolerance = DEFAULT_TOL) -> np.ndarray:
    lu, perm, _ = lu_factor(m, tol)
    n = lu.shape[0]
    # Solve L U X = P I column-block-wise by forward and back substitution.
    x = np.eye(n)[perm]
    for k in range(n):
        x[k + 1 :] -= np.outer(lu[k + 1 :, k], x[k])
    for k in range(n - 1, -1, -1):
        x[k] /= lu[k, k]
        x[:k] -= np.outer(lu[:k, k], x[k])
    return x


def numerical_rank(m, tol: RankTolerance = DEFAULT_TOL) -> int:
    a = as_matrix(m)
    rows, cols = a.shape
    thresh = tol.threshold(a)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= thresh or a[p, c] == 0.0:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        factors = a[r + 1 :, c] / a[r, c]
        a[r + 1 :, c:] -= np.outer(factors, a[r, c:])
        r += 1
    return r


def solve_least_structure(A, Bm, tol: RankTolerance = DEFAULT_TOL) -> np.ndarray:
    """Solve the row systems ``X @ A = Bm`` for ``X``.

    ``A`` is ``k x m`` with one row per unknown; it must have full row rank
    ``k`` or ``RankDeficient`` is raised. The least-squares solution is
    returned, which is exact for consistent systems.
    """
    a = as_matrix(A)
    b = as_matrix(Bm)
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"shape mismatch: A is {a.shape}, Bm is {b.shape}")
    rank = numerical_rank(a, tol)
    if rank < a.shape[0]:
        raise RankDeficient(rank, a.shape[0])
    xt, *_ = np.linalg.lstsq(a.T, b.T, rcond=None)
    return xt.T
