"""Minimal dense linear algebra for oracles and tests.

Everything here is guarded to small sizes on purpose: these routines
back brute-force reference computations, not production paths.
"""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

SIZE_GUARD = 2000
PIVOT_TOL = 1e-14


class SingularMatrixError(RuntimeError):
    """Pivot below tolerance during LU factorization."""


def solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve A X = B by LU with partial pivoting (LAPACK).

    Raises SingularMatrixError when a pivot falls below 1e-14 relative
    to the largest one.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("A must be square")
    if a.shape[0] > SIZE_GUARD:
        raise ValueError(f"dense solve is guarded to N <= {SIZE_GUARD}")
    with warnings.catch_warnings():
        # the pivot check below raises; scipy's own warning is redundant
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a)
    pivots = np.abs(np.diag(lu))
    if pivots.size and pivots.min() <= PIVOT_TOL * max(1.0, pivots.max()):
        raise SingularMatrixError("matrix is singular to pivot tolerance")
    return scipy.linalg.lu_solve((lu, piv), b)


def leading_eigenpair(a: np.ndarray, tol: float = 1e-12,
                      max_iter: int = 10000):
    """Leading eigenpair of a non-negative matrix by power iteration.

    The iterate is renormalized to unit 1-norm each sweep; returns
    (lambda, v) with v summing to 1.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("A must be square")
    if a.shape[0] > SIZE_GUARD:
        raise ValueError(f"eigen-solve is guarded to N <= {SIZE_GUARD}")
    v = np.full(a.shape[0], 1.0 / a.shape[0])
    lam = 0.0
    for _ in range(max_iter):
        w = a @ v
        lam = float(np.abs(w).sum())
        if lam == 0.0:
            return 0.0, v
        w = w / lam
        if float(np.abs(w - v).sum()) < tol:
            return lam, w
        v = w
    raise RuntimeError(
        f"power iteration did not converge in {max_iter} sweeps"
    )


def rank_one_check(m: np.ndarray) -> float:
    """Largest |2x2 minor| of a matrix; ~0 iff the matrix has rank one."""
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError("expected a matrix")
    if max(m.shape) > SIZE_GUARD:
        raise ValueError(f"minor scan is guarded to N <= {SIZE_GUARD}")
    worst = 0.0
    rows = m.shape[0]
    for i in range(rows - 1):
        for k in range(i + 1, rows):
            minors = np.abs(np.outer(m[i], m[k]) - np.outer(m[k], m[i])).max()
            worst = max(worst, float(minors))
    return worst
