"""Subset-level analysis: local rankings, density grids, layered networks.

Local ranks K and K* order the subset members by their global PageRank
and CheiRank probabilities. K_G re-ranks them by the stationary vector
of the column-renormalized direct-plus-hidden matrix, which removes the
dominant projector background. The layered network extraction follows
the strongest matrix entries outward from a set of primary nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .graph import SubsetSpec
from .reduced import ReducedDecomposition
from .spectral import ConvergenceError, RankVector


@dataclass
class LocalRankTable:
    """Per-member global probabilities and local rank indices."""

    members: np.ndarray
    p: np.ndarray
    pstar: np.ndarray
    k: np.ndarray
    kstar: np.ndarray
    kg: Optional[np.ndarray] = None


def _local_rank(values: np.ndarray, tiebreak: np.ndarray) -> np.ndarray:
    order = np.lexsort((tiebreak, -values))
    ranks = np.empty(values.size, dtype=np.int64)
    ranks[order] = np.arange(1, values.size + 1)
    return ranks


def local_ranks(p: RankVector, pstar: RankVector, subset: SubsetSpec):
    """Local (K, K*) indices of the subset members.

    Members are ordered by descending global probability; ties break by
    ascending node id. Returns two arrays aligned with subset order.
    """
    members = subset.members
    if members.max() >= p.p.size or members.max() >= pstar.p.size:
        raise IndexError("subset member id out of range for rank vector")
    k = _local_rank(p.p[members], members)
    kstar = _local_rank(pstar.p[members], members)
    return k, kstar


def rank_table(p: RankVector, pstar: RankVector, subset: SubsetSpec,
               kg: Optional[np.ndarray] = None) -> LocalRankTable:
    k, kstar = local_ranks(p, pstar, subset)
    return LocalRankTable(
        members=subset.members.copy(),
        p=p.p[subset.members],
        pstar=pstar.p[subset.members],
        k=k,
        kstar=kstar,
        kg=kg,
    )


def kg_rank(dec: ReducedDecomposition, tol: float = 1e-12,
            max_iter: int = 10000) -> np.ndarray:
    """Ranking K_G from the direct-plus-hidden matrix.

    Builds M = G_rr + G_qr-without-diagonal, clamps negative entries to
    zero, renormalizes every column to unit sum (columns with no mass
    become uniform), and power-iterates the stationary vector of the
    resulting stochastic matrix with no extra damping. Ties break by
    ascending subset position.
    """
    m = dec.G_rr + dec.gqr_offdiag()
    np.clip(m, 0.0, None, out=m)
    n_r = m.shape[0]
    colsum = m.sum(axis=0)
    zero = colsum <= 0.0
    m[:, ~zero] /= colsum[~zero]
    m[:, zero] = 1.0 / n_r
    x = np.full(n_r, 1.0 / n_r)
    for _ in range(max_iter):
        y = m @ x
        if float(np.abs(y - x).sum()) < tol:
            x = y
            break
        x = y
    else:
        raise ConvergenceError(
            f"K_G stationary vector: no convergence in {max_iter} sweeps"
        )
    return _local_rank(x, np.arange(n_r))


@dataclass
class DensityGrid:
    """Node counts over a logarithmic (ln K, ln K*) grid.

    ``counts[i, j]`` is the number of nodes whose (ln K, ln K*) falls in
    cell i of the K axis and cell j of the K* axis; cell boundaries are
    equidistant over [0, ln N] with the last boundary inclusive.
    """

    counts: np.ndarray
    k_edges: np.ndarray
    kstar_edges: np.ndarray


def density_grid(p: RankVector, pstar: RankVector,
                 bins: int = 100) -> DensityGrid:
    """Histogram of all nodes on the (ln K, ln K*) plane."""
    if bins < 1:
        raise ValueError("bins must be at least 1")
    n = p.p.size
    if pstar.p.size != n:
        raise ValueError("rank vectors cover different graphs")
    ln_n = float(np.log(n))
    if ln_n == 0.0:
        counts = np.zeros((bins, bins), dtype=np.int64)
        counts[0, 0] = n
        edges = np.zeros(bins + 1)
        return DensityGrid(counts, edges, edges.copy())
    edges = np.linspace(0.0, ln_n, bins + 1)
    ln_k = np.log(p.ranks().astype(np.float64))
    ln_kstar = np.log(pstar.ranks().astype(np.float64))
    counts, _, _ = np.histogram2d(ln_k, ln_kstar, bins=(edges, edges))
    return DensityGrid(counts.astype(np.int64), edges, edges.copy())


class LinkEdge(NamedTuple):
    source: int
    target: int
    level: int
    weight: float


@dataclass
class LayeredNetwork:
    """Levels of nodes and the strongest-link edges connecting them.

    ``levels[0]`` holds the primary nodes; each later level holds the
    nodes first reached while following the top-k links of the previous
    one. ``saturated_at`` is the level whose processing produced no new
    nodes, or None if ``max_levels`` was exhausted first. Node indices
    are positions in the matrix the network was extracted from.
    """

    levels: list
    edges: list
    saturated_at: Optional[int]
    direction: str
    k: int


def _top_candidates(weights: np.ndarray, exclude: int, k: int):
    idx = np.flatnonzero(weights > 0.0)
    idx = idx[idx != exclude]
    if idx.size == 0:
        return []
    order = np.lexsort((idx, -weights[idx]))
    chosen = idx[order[:k]]
    return [(int(i), float(weights[i])) for i in chosen]


def top_links_network(m: np.ndarray, primaries, k: int = 4,
                      direction: str = "friends",
                      max_levels: int = 5) -> LayeredNetwork:
    """Layered subnetwork of the k strongest links per node.

    Starting from the primary nodes (level 1), each processing pass
    takes, for every node j of the current level, its k largest
    strictly-positive off-diagonal entries: down column j for
    ``friends`` (nodes j points to most strongly, edges j -> i) or
    along row j for ``followers`` (nodes pointing to j, edges i -> j).
    Candidates tie-break by larger weight then ascending position. Every
    selected link is recorded with the level it was found at; nodes not
    seen before form the next level. Extraction stops after
    ``max_levels`` passes or as soon as a pass adds no node.
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if direction not in ("friends", "followers"):
        raise ValueError(f"unknown direction {direction!r}")
    if k < 1:
        raise ValueError("k must be at least 1")
    if max_levels < 1:
        raise ValueError("max_levels must be at least 1")
    n = m.shape[0]
    primaries = [int(j) for j in primaries]
    if not primaries:
        raise ValueError("need at least one primary node")
    if len(set(primaries)) != len(primaries):
        raise ValueError("primary nodes must be distinct")
    if min(primaries) < 0 or max(primaries) >= n:
        raise IndexError("primary node out of range")
    k = min(k, n - 1)

    levels = [list(primaries)]
    placed = set(primaries)
    edges = []
    saturated_at = None
    for level in range(1, max_levels + 1):
        fresh = []
        for j in levels[level - 1]:
            weights = m[:, j] if direction == "friends" else m[j, :]
            for i, w in _top_candidates(weights, j, k):
                if direction == "friends":
                    edges.append(LinkEdge(j, i, level, w))
                else:
                    edges.append(LinkEdge(i, j, level, w))
                if i not in placed:
                    placed.add(i)
                    fresh.append(i)
        if not fresh:
            saturated_at = level
            break
        levels.append(fresh)
    return LayeredNetwork(levels, edges, saturated_at, direction, k)
