"""Reduced Google matrix of a small subset inside a larger network.

For N_r chosen nodes out of N, the reduced matrix

    G_R = G_rr + G_rs (1 - G_ss)^{-1} G_sr

is an N_r x N_r column-stochastic matrix whose fixed point reproduces
the global PageRank restricted to the subset. It splits into three
parts: G_rr (direct links inside the subset), G_pr (a rank-one
background imposed by the subset's PageRank in the full network) and
G_qr (indirect links routed through the rest of the network - the
"hidden" links).
"""

import numpy as np
from netgen import preferential_attachment

from rgmat import GoogleOperator, SubsetSpec, pagerank, reduce

rng = np.random.default_rng(7)
graph = preferential_attachment(rng, 8000)
op = GoogleOperator(graph, alpha=0.85)

# pick 20 mid-ranking nodes as the group of interest: prominent, but far
# from the global hubs that hoard most of the probability
p = pagerank(op, tol=1e-13)
subset = SubsetSpec(np.sort(p.order[30:50]), graph.n)
print(f"{graph}; reduced space = {subset.n_r} nodes")

dec = reduce(op, subset, tol=1e-13)

print(f"\nlambda_c of the scattering block : {dec.lambda_c:.8f}")
print(f"1 - lambda_c                     : {dec.one_minus_lambda_c:.3e}")
sigma_p = float(p.p[subset.members].sum())
print(f"subset PageRank weight sigma_P   : {sigma_p:.3e}   "
      f"(close to 1 - lambda_c)")

print(f"\ncomponent weights: W_rr={dec.W_rr:.4f}  W_pr={dec.W_pr:.4f}  "
      f"W_qr={dec.W_qr:.4f}  (sum={dec.W_rr + dec.W_pr + dec.W_qr:.12f})")
print(f"G_qr diagonal/off-diagonal weights: W_qrd={dec.W_qrd:.5f}  "
      f"W_qrnd={dec.W_qrnd:.5f}")
print(f"series terms per column: min={dec.series_terms.min()} "
      f"max={dec.series_terms.max()}")
print(f"negative G_qr weight (kept, recorded): {dec.negative_weight:.2e}")

# Every column of G_R sums to one: it is itself a Google matrix for the
# chosen nodes, with the whole network folded in.
print("\nmax |column sum of G_R - 1|:",
      float(np.abs(dec.G_R.sum(axis=0) - 1.0).max()))

# The G_R fixed point reproduces the global PageRank on the subset.
p_r = p.p[subset.members]
print("GR fixed-point error:",
      float(np.abs(dec.G_R @ p_r - p_r).sum() / p_r.sum()))

# The strongest hidden link: probability flowing through the rest of
# the network between two subset nodes that need not be linked at all.
qr = dec.gqr_offdiag()
i, j = np.unravel_index(np.argmax(qr), qr.shape)
direct = dec.G_rr[i, j] - (1 - 0.85) / graph.n
print(f"\nstrongest hidden link: node {subset.members[j]} -> "
      f"node {subset.members[i]} amplitude {qr[i, j]:.4e} "
      f"(direct-link amplitude there: {direct:.1e})")
