"""Command line: rank, reduce, density, subnet, cache.

Exit codes: 0 on success, 1 on solver failure (non-convergence or a
singular system), 2 on usage or I/O problems. Repeated runs with the
same inputs produce byte-identical outputs regardless of --threads.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .analysis import kg_rank, density_grid, rank_table, top_links_network
from .dense import SingularMatrixError
from .gmatrix import GoogleOperator
from .graph import (DirectedGraph, GraphFormatError, SubsetSpec,
                    invert, is_cache_file, load_cache, load_edge_file,
                    save_cache)
from .reduced import reduce
from .serialize import (subnet_payload, write_density_csv, write_json,
                        write_matrix_csv, write_rank_csv,
                        write_ranks_table_csv, write_subnet_dot)
from .spectral import ConvergenceError, cheirank, pagerank


@dataclass
class RunConfig:
    input: str
    out: str
    alpha: float = 0.85
    tol: float = 1e-12
    max_iter: int = 10000
    subset: Optional[str] = None
    grid: int = 100
    topk: int = 4
    levels: int = 2
    direction: str = "friends"
    matrix: str = "GR"
    invert: bool = False
    threads: int = 1
    primaries: Optional[str] = None


def _load_graph(path) -> DirectedGraph:
    if is_cache_file(path):
        return load_cache(path)
    return load_edge_file(path)


def _load_subset(graph: DirectedGraph, path) -> SubsetSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return SubsetSpec.from_lines(graph, fh)


def _prepare(cfg: RunConfig):
    graph = _load_graph(cfg.input)
    if cfg.invert:
        graph = invert(graph)
    os.makedirs(cfg.out, exist_ok=True)
    return graph


def cmd_rank(cfg: RunConfig) -> None:
    graph = _prepare(cfg)
    op = GoogleOperator(graph, cfg.alpha)
    p = pagerank(op, cfg.tol, cfg.max_iter)
    pstar = cheirank(graph, cfg.alpha, cfg.tol, cfg.max_iter)
    write_rank_csv(os.path.join(cfg.out, "pagerank.csv"), p, graph)
    write_rank_csv(os.path.join(cfg.out, "cheirank.csv"), pstar, graph)
    write_json(os.path.join(cfg.out, "rank_meta.json"), {
        "alpha": cfg.alpha,
        "tol": cfg.tol,
        "max_iter": cfg.max_iter,
        "n": graph.n,
        "edges": graph.n_edges,
        "pagerank": {"iterations": p.iterations, "residual": p.residual},
        "cheirank": {"iterations": pstar.iterations,
                     "residual": pstar.residual},
    })


def _reduce_pipeline(cfg: RunConfig):
    graph = _prepare(cfg)
    if cfg.subset is None:
        raise GraphFormatError("a subset file is required")
    subset = _load_subset(graph, cfg.subset)
    op = GoogleOperator(graph, cfg.alpha)
    dec = reduce(op, subset, cfg.tol, cfg.max_iter, threads=cfg.threads)
    return graph, subset, op, dec


def cmd_reduce(cfg: RunConfig) -> None:
    graph, subset, op, dec = _reduce_pipeline(cfg)
    p = pagerank(op, cfg.tol, cfg.max_iter)
    pstar = cheirank(graph, cfg.alpha, cfg.tol, cfg.max_iter)
    kg = kg_rank(dec, cfg.tol, cfg.max_iter)
    table = rank_table(p, pstar, subset, kg=kg)
    sigma_p = float(p.p[subset.members].sum())

    write_matrix_csv(os.path.join(cfg.out, "GR.csv"), dec.G_R)
    write_matrix_csv(os.path.join(cfg.out, "Grr.csv"), dec.G_rr)
    write_matrix_csv(os.path.join(cfg.out, "Gpr.csv"), dec.G_pr)
    write_matrix_csv(os.path.join(cfg.out, "Gqr.csv"), dec.G_qr)
    write_matrix_csv(os.path.join(cfg.out, "Gqrnd.csv"), dec.gqr_offdiag())
    write_ranks_table_csv(os.path.join(cfg.out, "ranks.csv"), table, graph)
    terms = dec.series_terms
    write_json(os.path.join(cfg.out, "weights.json"), {
        "alpha": cfg.alpha,
        "n": graph.n,
        "n_r": subset.n_r,
        "W_rr": dec.W_rr,
        "W_pr": dec.W_pr,
        "W_qr": dec.W_qr,
        "W_qrd": dec.W_qrd,
        "W_qrnd": dec.W_qrnd,
        "lambda_c": dec.lambda_c,
        "one_minus_lambda_c": dec.one_minus_lambda_c,
        "sigma_P": sigma_p,
        "sigma_ratio": dec.one_minus_lambda_c / sigma_p,
        "negative_weight": dec.negative_weight,
        "eigen_iterations": dec.eigen_iterations,
        "eigen_residual": dec.eigen_residual,
        "series_terms": [int(t) for t in terms],
        "series_terms_max": int(terms.max()),
        "series_terms_mean": float(terms.mean()),
        "series_decay_max": float(dec.series_decay.max()),
    })


def cmd_density(cfg: RunConfig) -> None:
    graph = _prepare(cfg)
    op = GoogleOperator(graph, cfg.alpha)
    p = pagerank(op, cfg.tol, cfg.max_iter)
    pstar = cheirank(graph, cfg.alpha, cfg.tol, cfg.max_iter)
    grid = density_grid(p, pstar, cfg.grid)
    write_density_csv(os.path.join(cfg.out, "density.csv"), grid)


def cmd_subnet(cfg: RunConfig) -> None:
    graph, subset, _, dec = _reduce_pipeline(cfg)
    m = dec.G_R if cfg.matrix == "GR" else dec.G_qr
    if cfg.primaries is not None:
        prim_spec = _load_subset(graph, cfg.primaries)
        pos_of = {int(node): a for a, node in enumerate(subset.members)}
        try:
            primaries = [pos_of[int(node)] for node in prim_spec.members]
        except KeyError as exc:
            raise GraphFormatError(
                f"primary node {exc.args[0]} is not in the subset"
            ) from None
    else:
        primaries = list(range(subset.n_r))
    net = top_links_network(m, primaries, cfg.topk, cfg.direction,
                            cfg.levels)
    payload = subnet_payload(net, subset.members, graph)
    payload["matrix"] = cfg.matrix
    write_json(os.path.join(cfg.out, "subnet.json"), payload)
    write_subnet_dot(os.path.join(cfg.out, "subnet.dot"), net,
                     subset.members, graph)


def cmd_cache(args) -> None:
    graph = load_edge_file(args.input)
    save_cache(graph, args.output)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rgmat",
        description="PageRank, CheiRank and reduced Google matrix analysis "
                    "of sparse directed networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, subset_opt=False):
        sp.add_argument("input", help="edge list file or graph cache")
        sp.add_argument("--out", required=True, help="output directory")
        sp.add_argument("--alpha", type=float, default=0.85)
        sp.add_argument("--tol", type=float, default=1e-12)
        sp.add_argument("--max-iter", type=int, default=10000)
        if subset_opt:
            sp.add_argument("--subset", required=True,
                            help="file with one node id or label per line")
            sp.add_argument("--invert", action="store_true",
                            help="analyze the link-inverted network")
            sp.add_argument("--threads", type=int, default=1)

    sp = sub.add_parser("rank", help="global PageRank and CheiRank")
    common(sp)
    sp.add_argument("--invert", action="store_true")

    sp = sub.add_parser("reduce", help="reduced Google matrix of a subset")
    common(sp, subset_opt=True)

    sp = sub.add_parser("density", help="PageRank-CheiRank density grid")
    common(sp)
    sp.add_argument("--grid", type=int, default=100, metavar="B")

    sp = sub.add_parser("subnet", help="top-k friends/followers layers")
    common(sp, subset_opt=True)
    sp.add_argument("--matrix", choices=("GR", "Gqr"), default="GR")
    sp.add_argument("--topk", type=int, default=4, metavar="K")
    sp.add_argument("--levels", type=int, default=2, metavar="L")
    sp.add_argument("--direction", choices=("friends", "followers"),
                    default="friends")
    sp.add_argument("--primaries", default=None,
                    help="file listing the primary nodes (default: all "
                         "subset members)")

    sp = sub.add_parser("cache", help="parse an edge list into a binary "
                                      "cache for fast reload")
    sp.add_argument("input")
    sp.add_argument("output")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "cache":
            cmd_cache(args)
            return 0
        cfg = RunConfig(
            input=args.input,
            out=args.out,
            alpha=args.alpha,
            tol=args.tol,
            max_iter=args.max_iter,
            subset=getattr(args, "subset", None),
            grid=getattr(args, "grid", 100),
            topk=getattr(args, "topk", 4),
            levels=getattr(args, "levels", 2),
            direction=getattr(args, "direction", "friends"),
            matrix=getattr(args, "matrix", "GR"),
            invert=getattr(args, "invert", False),
            threads=getattr(args, "threads", 1),
            primaries=getattr(args, "primaries", None),
        )
        {"rank": cmd_rank, "reduce": cmd_reduce,
         "density": cmd_density, "subnet": cmd_subnet}[args.command](cfg)
        return 0
    except (ConvergenceError, SingularMatrixError) as exc:
        print(f"rgmat: solver failure: {exc}", file=sys.stderr)
        return 1
    except (GraphFormatError, OSError, ValueError, IndexError) as exc:
        print(f"rgmat: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
