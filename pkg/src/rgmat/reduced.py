"""Reduced Google matrix of a node subset and its three-component split.

The effective matrix of a subset of N_r nodes embedded in a network of
N nodes is

    G_R = G_rr + G_rs (1 - G_ss)^{-1} G_sr

with the inverse resummed over all orders of indirect links through the
scattering space. The leading eigenvalue lambda_c of G_ss (close to 1)
is deflated analytically with the spectral projector built from its
eigenpair, which splits G_R into

    G_R = G_rr + G_pr + G_qr

where G_pr is a rank-one projector component carrying most of the
probability weight and G_qr holds the indirect ("hidden") links. A dense
brute-force evaluation is provided as an oracle for small networks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import dense
from .gmatrix import GoogleOperator
from .graph import SubsetSpec
from .spectral import ConvergenceError, ScatterEigenpair, scatter_eigenpair


@dataclass
class ReducedDecomposition:
    """Dense reduced-space matrices and their diagnostics.

    All matrices are N_r x N_r with row = target and column = source,
    indexed in subset order. ``series_terms[j]`` counts the deflated
    series terms accumulated for column j and ``series_decay[j]`` the
    observed geometric decay rate of the term norms (a proxy for the
    second eigenvalue of G_ss).
    """

    subset: SubsetSpec
    G_R: np.ndarray
    G_rr: np.ndarray
    G_pr: np.ndarray
    G_qr: np.ndarray
    psi_tilde_R: np.ndarray
    psi_tilde_L: np.ndarray
    lambda_c: float
    one_minus_lambda_c: float
    W_rr: float
    W_pr: float
    W_qr: float
    W_qrd: float
    W_qrnd: float
    negative_weight: float
    series_terms: np.ndarray
    series_decay: np.ndarray
    eigen_residual: float
    eigen_iterations: int

    def gqr_offdiag(self) -> np.ndarray:
        """G_qr with its diagonal zeroed (the hidden-link view)."""
        out = self.G_qr.copy()
        np.fill_diagonal(out, 0.0)
        return out


def extract_grr(op: GoogleOperator, subset: SubsetSpec) -> np.ndarray:
    """Direct-link block: exact entries of G among the subset nodes."""
    members = subset.members
    n_r = members.size
    out = np.empty((n_r, n_r))
    for a in range(n_r):
        for b in range(n_r):
            out[a, b] = op.element(int(members[a]), int(members[b]))
    return out


def compute_gpr(op: GoogleOperator, subset: SubsetSpec,
                eig: ScatterEigenpair):
    """Rank-one projector component G_pr and its two reduced vectors.

    Returns (G_pr, psi_tilde_R, psi_tilde_L) with
    G_pr = psi_tilde_R psi_tilde_L^T / (1 - lambda_c).
    """
    if eig.one_minus_lambda_c <= 0.0:
        raise ValueError("1 - lambda_c must be positive")
    psi_tilde_r = op.apply_block(subset, "rs", eig.psi_R)
    psi_tilde_l = op.apply_block_t(subset, "sr", eig.psi_L)
    g_pr = np.outer(psi_tilde_r, psi_tilde_l) / eig.one_minus_lambda_c
    return g_pr, psi_tilde_r, psi_tilde_l


def _gqr_column(op, subset, eig, j, tol, max_terms):
    """Deflated indirect-link series for one reduced basis column.

    Returns (column, terms, decay, tail); ``column`` is None when the
    tail norm is still >= tol after max_terms accumulated terms.
    """
    psi_r = eig.psi_R
    psi_l = eig.psi_L

    def project_out(v):
        return v - psi_r * float(psi_l @ v)

    e = np.zeros(subset.n_r)
    e[j] = 1.0
    v = project_out(op.apply_block(subset, "sr", e))
    acc = np.zeros(subset.n_s)
    first_norm = float(np.abs(v).sum())
    norm = first_norm
    terms = 0
    while norm >= tol:
        if terms >= max_terms:
            return None, terms, 0.0, norm
        acc += v
        v = project_out(op.apply_block(subset, "ss", project_out(v)))
        norm = float(np.abs(v).sum())
        terms += 1
    decay = 0.0
    if terms >= 1 and first_norm > 0.0 and norm > 0.0:
        decay = float((norm / first_norm) ** (1.0 / terms))
    column = op.apply_block(subset, "rs", project_out(acc))
    return column, terms, decay, norm


def compute_gqr(op: GoogleOperator, subset: SubsetSpec,
                eig: ScatterEigenpair, tol: float = 1e-13,
                max_terms: int = 1000, threads: int = 1):
    """Indirect-link component G_qr from the deflated series.

    Each column accumulates Q_c Gbar_ss^l applied to the matching column
    of G_sr until the 1-norm of the running term drops below ``tol``
    (Q_c is the complement of the lambda_c spectral projector, so the
    series decays like the subleading eigenvalue, roughly alpha).
    Columns are independent; ``threads`` bounds a worker pool over them
    and each column is internally sequential, so the result does not
    depend on scheduling.

    Returns (G_qr, series_terms, series_decay).
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    n_r = subset.n_r
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(
                lambda j: _gqr_column(op, subset, eig, j, tol, max_terms),
                range(n_r),
            ))
    else:
        results = [_gqr_column(op, subset, eig, j, tol, max_terms)
                   for j in range(n_r)]
    failed = [(j, tail) for j, (col, _, _, tail) in enumerate(results)
              if col is None]
    if failed:
        worst_j, worst_tail = max(failed, key=lambda jt: jt[1])
        raise ConvergenceError(
            f"indirect-link series: {len(failed)} column(s) still above "
            f"{tol:.1e} after {max_terms} terms; worst is column "
            f"{worst_j} (tail {worst_tail:.3e})",
            residual=worst_tail, iterations=max_terms,
        )
    g_qr = np.empty((n_r, n_r))
    terms = np.empty(n_r, dtype=np.int64)
    decay = np.empty(n_r)
    for j, (col, t, d, _) in enumerate(results):
        g_qr[:, j] = col
        terms[j] = t
        decay[j] = d
    return g_qr, terms, decay


def reduce(op: GoogleOperator, subset: SubsetSpec, tol: float = 1e-12,
           max_iter: int = 10000, series_tol: float = 1e-13,
           max_terms: int = 1000, threads: int = 1) -> ReducedDecomposition:
    """Full reduced-matrix decomposition of a subset.

    Runs the scattering eigenpair solve, extracts the three components,
    and assembles G_R with the component weights (entry sums divided by
    N_r, so they add to 1) and the diagonal/off-diagonal split of G_qr.
    """
    eig = scatter_eigenpair(op, subset, tol, max_iter)
    g_rr = extract_grr(op, subset)
    g_pr, psi_tilde_r, psi_tilde_l = compute_gpr(op, subset, eig)
    g_qr, terms, decay = compute_gqr(op, subset, eig, series_tol,
                                     max_terms, threads)
    g_r = g_rr + g_pr + g_qr
    n_r = subset.n_r
    w_rr = float(g_rr.sum()) / n_r
    w_pr = float(g_pr.sum()) / n_r
    w_qr = float(g_qr.sum()) / n_r
    w_qrd = float(np.trace(g_qr)) / n_r
    negatives = g_qr[g_qr < 0.0]
    return ReducedDecomposition(
        subset=subset,
        G_R=g_r,
        G_rr=g_rr,
        G_pr=g_pr,
        G_qr=g_qr,
        psi_tilde_R=psi_tilde_r,
        psi_tilde_L=psi_tilde_l,
        lambda_c=eig.lambda_c,
        one_minus_lambda_c=eig.one_minus_lambda_c,
        W_rr=w_rr,
        W_pr=w_pr,
        W_qr=w_qr,
        W_qrd=w_qrd,
        W_qrnd=w_qr - w_qrd,
        negative_weight=float(np.abs(negatives).sum()),
        series_terms=terms,
        series_decay=decay,
        eigen_residual=eig.residual,
        eigen_iterations=eig.iterations,
    )


def oracle_reduce(op: GoogleOperator, subset: SubsetSpec) -> np.ndarray:
    """Brute-force G_R via the dense matrix inverse (small N only).

    Materializes the four blocks of G and evaluates
    G_rr + G_rs (1 - G_ss)^{-1} G_sr with a direct dense solve. Guarded
    to N <= 2000 so it cannot be misused at scale.
    """
    if op.n > 2000:
        raise ValueError("oracle_reduce is guarded to N <= 2000")
    g = op.to_dense()
    r = subset.members
    s = subset.complement
    g_rr = g[np.ix_(r, r)]
    g_rs = g[np.ix_(r, s)]
    g_sr = g[np.ix_(s, r)]
    g_ss = g[np.ix_(s, s)]
    x = dense.solve(np.eye(s.size) - g_ss, g_sr)
    return g_rr + g_rs @ x
