"""Plot-ready, diff-able output writers used by the command line.

Matrices go to CSV with 17-significant-digit floats (lossless for
float64), scalars and run metadata to JSON with sorted keys, layered
networks additionally to Graphviz DOT. Identical inputs produce
byte-identical files.
"""

from __future__ import annotations

import csv
import json

import numpy as np

from .analysis import DensityGrid, LayeredNetwork, LocalRankTable
from .graph import DirectedGraph
from .spectral import RankVector


def fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def write_matrix_csv(path, m: np.ndarray) -> None:
    m = np.asarray(m)
    with open(path, "w", encoding="utf-8") as fh:
        for row in m:
            fh.write(",".join(fmt_float(v) for v in row))
            fh.write("\n")


def read_matrix_csv(path) -> np.ndarray:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append([float(tok) for tok in line.split(",")])
    return np.array(rows)


def write_rank_csv(path, rv: RankVector, graph: DirectedGraph) -> None:
    """One row per node in rank order: node_id, label, probability, rank."""
    ranks = rv.ranks()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node_id", "label", "probability", "rank"])
        for node in rv.order:
            writer.writerow([
                int(node),
                graph.names[node] if graph.names is not None else "",
                fmt_float(rv.p[node]),
                int(ranks[node]),
            ])


def write_ranks_table_csv(path, table: LocalRankTable,
                          graph: DirectedGraph) -> None:
    """Subset rank table in subset order: probabilities plus K, K*, K_G."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node_id", "label", "pagerank", "cheirank",
                         "K", "Kstar", "KG"])
        for a, node in enumerate(table.members):
            writer.writerow([
                int(node),
                graph.names[node] if graph.names is not None else "",
                fmt_float(table.p[a]),
                fmt_float(table.pstar[a]),
                int(table.k[a]),
                int(table.kstar[a]),
                int(table.kg[a]) if table.kg is not None else "",
            ])


def write_density_csv(path, grid: DensityGrid) -> None:
    """B x B counts; axis boundaries are carried in '#' header lines."""
    b = grid.counts.shape[0]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# density grid B={b} total={int(grid.counts.sum())}\n")
        fh.write("# lnK_edges," +
                 ",".join(fmt_float(e) for e in grid.k_edges) + "\n")
        fh.write("# lnKstar_edges," +
                 ",".join(fmt_float(e) for e in grid.kstar_edges) + "\n")
        for row in grid.counts:
            fh.write(",".join(str(int(v)) for v in row))
            fh.write("\n")


def read_density_csv(path) -> DensityGrid:
    k_edges = kstar_edges = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line.startswith("# lnK_edges,"):
                k_edges = np.array(
                    [float(t) for t in line.split(",")[1:]])
            elif line.startswith("# lnKstar_edges,"):
                kstar_edges = np.array(
                    [float(t) for t in line.split(",")[1:]])
            elif line and not line.startswith("#"):
                rows.append([int(t) for t in line.split(",")])
    return DensityGrid(np.array(rows, dtype=np.int64), k_edges, kstar_edges)


def write_json(path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def subnet_payload(net: LayeredNetwork, members: np.ndarray,
                   graph: DirectedGraph) -> dict:
    """JSON-ready view of a layered network in global node ids."""

    def describe(pos):
        node = int(members[pos])
        return {"node_id": node, "label": graph.label_of(node)}

    return {
        "direction": net.direction,
        "k": net.k,
        "saturated_at": net.saturated_at,
        "levels": [[describe(p) for p in level] for level in net.levels],
        "edges": [
            {
                "source": int(members[e.source]),
                "target": int(members[e.target]),
                "level": e.level,
                "weight": e.weight,
            }
            for e in net.edges
        ],
    }


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_subnet_dot(path, net: LayeredNetwork, members: np.ndarray,
                     graph: DirectedGraph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("digraph subnet {\n")
        for depth, level in enumerate(net.levels, start=1):
            for pos in level:
                node = int(members[pos])
                label = _dot_quote(graph.label_of(node))
                fh.write(f"  n{node} [label={label}, level={depth}];\n")
        for e in net.edges:
            s = int(members[e.source])
            t = int(members[e.target])
            lbl = _dot_quote(f"{e.level}:{fmt_float(e.weight)}")
            fh.write(
                f"  n{s} -> n{t} [level={e.level}, "
                f"weight={fmt_float(e.weight)}, label={lbl}];\n"
            )
        fh.write("}\n")
