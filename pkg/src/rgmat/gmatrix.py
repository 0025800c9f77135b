"""Matrix-free application of the Google matrix G = alpha*S + (1-alpha)/N.

S is the column-stochastic transition matrix of a directed graph:
S_ij = A_ij / k_out(j) for a link j->i, and a uniform column 1/N for
dangling nodes (k_out(j) = 0). G is never materialized; dangling mass is
carried as a scalar, so one application costs O(edges + N).
"""

from __future__ import annotations

import numpy as np

from .graph import DirectedGraph, SubsetSpec

_BLOCKS = ("rr", "rs", "sr", "ss")


class GoogleOperator:
    """Google matrix of a graph at a fixed damping factor.

    Application to a non-negative vector preserves its 1-norm (column
    stochasticity); every matrix entry is at least (1-alpha)/N.
    """

    def __init__(self, graph: DirectedGraph, alpha: float = 0.85):
        if not 0.0 < alpha < 1.0:
            raise ValueError("alpha must lie strictly between 0 and 1")
        self.graph = graph
        self.alpha = float(alpha)
        self.n = graph.n
        kout = graph.out_degree
        self._dangling = np.flatnonzero(kout == 0)
        self._is_dangling = kout == 0
        with np.errstate(divide="ignore"):
            inv = 1.0 / kout.astype(np.float64)
        inv[self._is_dangling] = 0.0
        self._inv_kout = inv
        self._adj_t = None  # built on first transposed application

    def _transposed_adj(self):
        if self._adj_t is None:
            self._adj_t = self.graph.adj.T.tocsr()
            self._adj_t.sort_indices()
        return self._adj_t

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Return G @ x."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.n,):
            raise ValueError(f"expected vector of length {self.n}")
        y = self.graph.adj @ (x * self._inv_kout)
        dang = float(x[self._dangling].sum())
        c = (self.alpha * dang + (1.0 - self.alpha) * float(x.sum())) / self.n
        return self.alpha * y + c

    def element(self, i: int, j: int) -> float:
        """Exact single entry G_ij (i = target, j = source)."""
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError("node id out of range")
        tele = (1.0 - self.alpha) / self.n
        if self._is_dangling[j]:
            return self.alpha / self.n + tele
        adj = self.graph.adj
        row = adj.indices[adj.indptr[i]:adj.indptr[i + 1]]
        pos = np.searchsorted(row, j)
        if pos < row.size and row[pos] == j:
            return self.alpha * self._inv_kout[j] + tele
        return tele

    def _side_ids(self, subset: SubsetSpec, side: str) -> np.ndarray:
        if subset.n != self.n:
            raise ValueError("subset was built for a different graph size")
        return subset.members if side == "r" else subset.complement

    def apply_block(self, subset: SubsetSpec, block: str,
                    x: np.ndarray) -> np.ndarray:
        """Apply one block of G relative to a subset, G never formed.

        ``block`` is one of rr, rs, sr, ss; the first letter names the
        target side and the second the source side. ``x`` lives on the
        source side (length N_r for *r, N_s for *s) in subset order,
        and the result on the target side.
        """
        if block not in _BLOCKS:
            raise ValueError(f"unknown block {block!r}")
        tgt = self._side_ids(subset, block[0])
        src = self._side_ids(subset, block[1])
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (src.size,):
            raise ValueError(
                f"block {block}: expected source vector of length {src.size}"
            )
        z = np.zeros(self.n)
        z[src] = x
        w = self.graph.adj @ (z * self._inv_kout)
        dang = float(z[self._dangling].sum())
        c = (self.alpha * dang + (1.0 - self.alpha) * float(x.sum())) / self.n
        return self.alpha * w[tgt] + c

    def apply_block_t(self, subset: SubsetSpec, block: str,
                      x: np.ndarray) -> np.ndarray:
        """Apply the transpose of a block: x lives on the target side,
        the result on the source side."""
        if block not in _BLOCKS:
            raise ValueError(f"unknown block {block!r}")
        tgt = self._side_ids(subset, block[0])
        src = self._side_ids(subset, block[1])
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (tgt.size,):
            raise ValueError(
                f"block {block}^T: expected target vector of length {tgt.size}"
            )
        z = np.zeros(self.n)
        z[tgt] = x
        w = self._transposed_adj() @ z
        s = float(x.sum())
        y = self.alpha * (self._inv_kout[src] * w[src]) \
            + (1.0 - self.alpha) * s / self.n
        y[self._is_dangling[src]] += self.alpha * s / self.n
        return y

    def to_dense(self) -> np.ndarray:
        """Materialize G (guarded; for oracles and small cases only)."""
        if self.n > 2000:
            raise ValueError("dense Google matrix is guarded to N <= 2000")
        s = self.graph.adj.toarray() * self._inv_kout[None, :]
        s[:, self._is_dangling] = 1.0 / self.n
        return self.alpha * s + (1.0 - self.alpha) / self.n
