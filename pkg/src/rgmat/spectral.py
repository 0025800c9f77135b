"""Power-iteration solvers.

PageRank/CheiRank of the full Google matrix, and the leading left/right
eigenpair (lambda_c, psi_L, psi_R) of the scattering block G_ss of a node
subset. All iterations measure convergence by the 1-norm of successive
differences, matching the probability semantics of the vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gmatrix import GoogleOperator
from .graph import DirectedGraph, SubsetSpec, invert


class ConvergenceError(RuntimeError):
    """Power iteration failed to reach tolerance within max_iter."""

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


@dataclass
class RankVector:
    """Probability vector over nodes with its descending-order index.

    ``order[k]`` is the node id at rank k+1; ties in probability are
    broken by ascending node id, so the permutation is deterministic.
    """

    p: np.ndarray
    order: np.ndarray
    kind: str
    residual: float
    iterations: int

    def ranks(self) -> np.ndarray:
        """Per-node 1-based rank (K or K*)."""
        r = np.empty(self.p.size, dtype=np.int64)
        r[self.order] = np.arange(1, self.p.size + 1)
        return r


def _descending_order(p: np.ndarray) -> np.ndarray:
    return np.lexsort((np.arange(p.size), -p))


def _power(apply_fn, x0, tol, max_iter, normalize, what):
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    x = x0
    residual = np.inf
    for it in range(1, max_iter + 1):
        y = apply_fn(x)
        if normalize:
            y = y / np.abs(y).sum()
        residual = float(np.abs(y - x).sum())
        x = y
        if residual < tol:
            return x, residual, it
    raise ConvergenceError(
        f"{what}: no convergence after {max_iter} iterations "
        f"(last residual {residual:.3e})",
        residual=residual, iterations=max_iter,
    )


def pagerank(op: GoogleOperator, tol: float = 1e-12,
             max_iter: int = 10000, kind: str = "PageRank") -> RankVector:
    """Stationary probability vector of G by power iteration.

    Starts from the uniform vector and stops when the 1-norm change of
    one sweep drops below ``tol``. Raises ConvergenceError (carrying the
    last residual) if ``max_iter`` sweeps do not suffice.
    """
    x0 = np.full(op.n, 1.0 / op.n)
    x, residual, it = _power(op.apply, x0, tol, max_iter, False, kind)
    p = x / x.sum()
    return RankVector(p, _descending_order(p), kind, residual, it)


def cheirank(g: DirectedGraph, alpha: float = 0.85, tol: float = 1e-12,
             max_iter: int = 10000) -> RankVector:
    """PageRank of the link-inverted network (communicativity ranking)."""
    return pagerank(GoogleOperator(invert(g), alpha), tol, max_iter,
                    kind="CheiRank")


@dataclass
class ScatterEigenpair:
    """Leading eigenpair of the scattering block G_ss.

    psi_R is normalized to unit total mass (E_s^T psi_R = 1) and psi_L
    to psi_L^T psi_R = 1. ``one_minus_lambda_c`` is evaluated from the
    column-sum identity E_r^T G_rs psi_R = 1 - lambda_c, which stays
    accurate even when lambda_c is close to 1; lambda_c is derived from
    it.
    """

    lambda_c: float
    one_minus_lambda_c: float
    psi_R: np.ndarray
    psi_L: np.ndarray
    residual: float
    iterations: int


def scatter_eigenpair(op: GoogleOperator, subset: SubsetSpec,
                      tol: float = 1e-12,
                      max_iter: int = 10000) -> ScatterEigenpair:
    """Power iteration for the leading eigenpair of G_ss.

    Both eigenvectors start uniform (they are non-negative by
    Perron-Frobenius, so the overlap is non-zero) and are renormalized
    to unit 1-norm every sweep. A degenerate leading eigenvalue is not
    handled; it surfaces as non-convergence.
    """
    n_s = subset.n_s
    x0 = np.full(n_s, 1.0 / n_s)
    psi_r, res_r, it_r = _power(
        lambda v: op.apply_block(subset, "ss", v),
        x0, tol, max_iter, True, "psi_R",
    )
    psi_l, res_l, it_l = _power(
        lambda v: op.apply_block_t(subset, "ss", v),
        x0, tol, max_iter, True, "psi_L",
    )
    psi_l = psi_l / float(psi_l @ psi_r)
    one_minus = float(np.abs(op.apply_block(subset, "rs", psi_r)).sum())
    lam = 1.0 - one_minus
    if not 0.0 < lam < 1.0:
        raise ConvergenceError(
            f"leading eigenvalue {lam!r} outside (0, 1)",
            residual=max(res_r, res_l), iterations=max(it_r, it_l),
        )
    return ScatterEigenpair(
        lambda_c=lam,
        one_minus_lambda_c=one_minus,
        psi_R=psi_r,
        psi_L=psi_l,
        residual=max(res_r, res_l),
        iterations=max(it_r, it_l),
    )
