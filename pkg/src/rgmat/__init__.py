"""PageRank, CheiRank and reduced Google matrix analysis of directed networks."""

from .analysis import (DensityGrid, LayeredNetwork, LinkEdge, LocalRankTable,
                       density_grid, kg_rank, local_ranks, rank_table,
                       top_links_network)
from .gmatrix import GoogleOperator
from .graph import (DirectedGraph, GraphFormatError, SubsetSpec, invert,
                    load_cache, load_edge_file, load_edge_list, save_cache)
from .reduced import (ReducedDecomposition, compute_gpr, compute_gqr,
                      extract_grr, oracle_reduce, reduce)
from .spectral import (ConvergenceError, RankVector, ScatterEigenpair,
                       cheirank, pagerank, scatter_eigenpair)

__version__ = "0.1.0"

__all__ = [
    "DensityGrid",
    "DirectedGraph",
    "GoogleOperator",
    "GraphFormatError",
    "LayeredNetwork",
    "LinkEdge",
    "LocalRankTable",
    "RankVector",
    "ReducedDecomposition",
    "ScatterEigenpair",
    "SubsetSpec",
    "ConvergenceError",
    "cheirank",
    "compute_gpr",
    "compute_gqr",
    "density_grid",
    "extract_grr",
    "invert",
    "kg_rank",
    "load_cache",
    "load_edge_file",
    "load_edge_list",
    "local_ranks",
    "oracle_reduce",
    "pagerank",
    "rank_table",
    "reduce",
    "save_cache",
    "scatter_eigenpair",
    "top_links_network",
]
