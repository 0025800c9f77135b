"""Sparse directed graphs: edge-list ingestion, inversion, node subsets.

Graphs are immutable after construction. Edges are stored as a binary
adjacency matrix in CSR layout with row = target and column = source, so
a matrix-vector product accumulates contributions in ascending source id
for every target (this keeps all downstream arithmetic bitwise
reproducible).
"""

from __future__ import annotations

import io
import re
import struct
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_array

_INT_TOKEN = re.compile(r"^[0-9]+$")

CACHE_MAGIC = b"RGMG"
CACHE_VERSION = 1


class GraphFormatError(ValueError):
    """Malformed edge list, subset file, or graph cache."""


class DirectedGraph:
    """Immutable sparse directed graph with dense ids 0..N-1.

    Parameters
    ----------
    n : int
        Node count. Must cover every id in the edge arrays.
    src, dst : array_like of int
        Edge endpoints (src -> dst). Duplicate pairs are collapsed;
        self-loops are kept.
    names : list of str, optional
        Node labels, ``names[i]`` for id ``i``.
    """

    def __init__(self, n, src, dst, names=None):
        if n <= 0:
            raise GraphFormatError("empty graph")
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if src.shape != dst.shape:
            raise ValueError("src/dst length mismatch")
        if src.size and (src.min() < 0 or dst.min() < 0
                         or src.max() >= n or dst.max() >= n):
            raise ValueError("edge endpoint out of range")
        if names is not None and len(names) != n:
            raise ValueError("names length must equal n")

        adj = csr_array(
            (np.ones(src.size), (dst, src)), shape=(n, n)
        )
        # collapse duplicate input edges to a single binary entry
        adj.sum_duplicates()
        adj.data[:] = 1.0
        adj.sort_indices()

        self.n = int(n)
        self.adj = adj
        self.out_degree = np.bincount(
            adj.indices, weights=None, minlength=n
        ).astype(np.int64)
        self.names = list(names) if names is not None else None
        self._name_to_id = (
            {name: i for i, name in enumerate(self.names)}
            if self.names is not None else None
        )

    @property
    def n_edges(self):
        return int(self.adj.nnz)

    def edges(self):
        """Return (src, dst) arrays of the stored (deduplicated) edges."""
        coo = self.adj.tocoo()
        return coo.col.astype(np.int64), coo.row.astype(np.int64)

    def id_of(self, label):
        if self._name_to_id is None:
            raise KeyError("graph has no node labels")
        return self._name_to_id[label]

    def label_of(self, i):
        return self.names[i] if self.names is not None else str(i)

    def __repr__(self):
        return f"DirectedGraph(n={self.n}, edges={self.n_edges})"


def invert(g: DirectedGraph) -> DirectedGraph:
    """Graph with every edge j->i replaced by i->j (an involution)."""
    src, dst = g.edges()
    return DirectedGraph(g.n, dst, src, names=g.names)


def load_edge_list(stream, fmt="auto") -> DirectedGraph:
    """Parse a whitespace-separated edge list into a DirectedGraph.

    Each non-blank, non-comment line holds ``src dst``. Endpoints are
    either all non-negative integer ids or all labels; with
    ``fmt="auto"`` a mix of the two styles is rejected. Integer ids are
    taken literally (N = max id + 1); labels are assigned ids in first
    appearance order. Duplicate lines collapse to a single edge.

    Parameters
    ----------
    stream : iterable of str, or str path-like content via open file
    fmt : {"auto", "ids", "labels"}
    """
    if fmt not in ("auto", "ids", "labels"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(stream, str):
        stream = io.StringIO(stream)

    tok_a: list[str] = []
    tok_b: list[str] = []
    seen_int = False
    seen_label = False
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(
                f"line {lineno}: expected 'src dst', got {line!r}"
            )
        for tok in parts:
            if _INT_TOKEN.match(tok):
                seen_int = True
            else:
                seen_label = True
                if fmt == "ids":
                    raise GraphFormatError(
                        f"line {lineno}: non-integer id {tok!r}"
                    )
        tok_a.append(parts[0])
        tok_b.append(parts[1])

    if not tok_a:
        raise GraphFormatError("empty graph")

    use_labels = fmt == "labels"
    if fmt == "auto":
        if seen_int and seen_label:
            raise GraphFormatError(
                "mixed integer ids and labels; pass fmt='labels' to force"
            )
        use_labels = seen_label

    if use_labels:
        ids: dict[str, int] = {}
        for tok in [t for pair in zip(tok_a, tok_b) for t in pair]:
            if tok not in ids:
                ids[tok] = len(ids)
        src = np.array([ids[t] for t in tok_a], dtype=np.int64)
        dst = np.array([ids[t] for t in tok_b], dtype=np.int64)
        names = list(ids)
        return DirectedGraph(len(names), src, dst, names=names)

    src = np.array([int(t) for t in tok_a], dtype=np.int64)
    dst = np.array([int(t) for t in tok_b], dtype=np.int64)
    n = int(max(src.max(), dst.max())) + 1
    return DirectedGraph(n, src, dst)


def load_edge_file(path, fmt="auto") -> DirectedGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return load_edge_list(fh, fmt=fmt)


def save_cache(g: DirectedGraph, path) -> None:
    """Write a binary cache of the graph (little-endian, versioned)."""
    src, dst = g.edges()
    flags = 1 if g.names is not None else 0
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<IB", CACHE_VERSION, flags))
        fh.write(struct.pack("<QQ", g.n, src.size))
        fh.write(src.astype("<u4").tobytes())
        fh.write(dst.astype("<u4").tobytes())
        if g.names is not None:
            for name in g.names:
                b = name.encode("utf-8")
                fh.write(struct.pack("<I", len(b)))
                fh.write(b)


def load_cache(path) -> DirectedGraph:
    """Read a graph written by :func:`save_cache`."""
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != CACHE_MAGIC:
            raise GraphFormatError(f"{path}: not a graph cache")
        version, flags = struct.unpack("<IB", fh.read(5))
        if version != CACHE_VERSION:
            raise GraphFormatError(
                f"{path}: unsupported cache version {version}"
            )
        n, m = struct.unpack("<QQ", fh.read(16))
        src = np.frombuffer(fh.read(4 * m), dtype="<u4").astype(np.int64)
        dst = np.frombuffer(fh.read(4 * m), dtype="<u4").astype(np.int64)
        names = None
        if flags & 1:
            names = []
            for _ in range(n):
                (ln,) = struct.unpack("<I", fh.read(4))
                names.append(fh.read(ln).decode("utf-8"))
    return DirectedGraph(n, src, dst, names=names)


def is_cache_file(path) -> bool:
    try:
        with open(path, "rb") as fh:
            return fh.read(4) == CACHE_MAGIC
    except OSError:
        return False


@dataclass(frozen=True, eq=False)
class SubsetSpec:
    """Ordered node subset defining the reduced ("r") space.

    The member order fixes the row/column order of every reduced
    matrix. The complement (the scattering space "s") is kept in
    ascending id order.
    """

    members: np.ndarray
    n: int
    complement: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        members = np.asarray(self.members, dtype=np.int64)
        if members.ndim != 1 or members.size == 0:
            raise ValueError("subset must be a non-empty 1-d id list")
        if np.unique(members).size != members.size:
            raise ValueError("subset members must be distinct")
        if members.min() < 0 or members.max() >= self.n:
            raise ValueError("subset member id out of range")
        if members.size >= self.n:
            raise ValueError(
                "subset must leave a non-empty scattering space (N_r < N)"
            )
        mask = np.ones(self.n, dtype=bool)
        mask[members] = False
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "complement", np.flatnonzero(mask))

    @property
    def n_r(self):
        return int(self.members.size)

    @property
    def n_s(self):
        return int(self.n - self.members.size)

    @classmethod
    def from_lines(cls, graph: DirectedGraph, lines) -> "SubsetSpec":
        """Resolve one id or label per line against a graph.

        Blank lines and '#' comments are skipped. Files for labelled
        graphs may mix labels with literal integer ids.
        """
        if isinstance(lines, str):
            lines = lines.splitlines()
        ids = []
        for lineno, raw in enumerate(lines, start=1):
            tok = raw.strip()
            if not tok or tok.startswith("#"):
                continue
            if graph.names is not None and tok in graph._name_to_id:
                ids.append(graph.id_of(tok))
            elif _INT_TOKEN.match(tok):
                ids.append(int(tok))
            else:
                raise GraphFormatError(f"line {lineno}: unknown node {tok!r}")
        return cls(np.array(ids, dtype=np.int64), graph.n)
