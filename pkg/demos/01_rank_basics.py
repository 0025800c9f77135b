"""PageRank and CheiRank of a small labelled network.

PageRank measures how often a random surfer following links lands on a
node (incoming-link authority); CheiRank is the same computation on the
link-inverted network and measures how communicative a node is through
its outgoing links.
"""

import numpy as np

from rgmat import GoogleOperator, cheirank, load_edge_list, pagerank

# A toy citation-style network. 'hub' points everywhere, 'sink' has no
# outgoing links at all (a dangling node: its column of the transition
# matrix becomes uniform).
EDGES = """
hub alice
hub bob
hub carol
alice bob
bob carol
carol alice
carol hub
alice sink
bob sink
"""

graph = load_edge_list(EDGES)
print(f"{graph} with labels {graph.names}")

op = GoogleOperator(graph, alpha=0.85)
p = pagerank(op, tol=1e-12)
pstar = cheirank(graph, alpha=0.85, tol=1e-12)
print(f"PageRank converged in {p.iterations} sweeps "
      f"(residual {p.residual:.2e})")

print("\nnode        PageRank   K   CheiRank  K*")
k = p.ranks()
kstar = pstar.ranks()
for i in np.argsort(k):
    print(f"{graph.names[i]:<10} {p.p[i]:9.5f}  {k[i]:2d}  "
          f"{pstar.p[i]:9.5f}  {kstar[i]:2d}")

# The two orderings disagree: 'sink' collects links (decent PageRank)
# but points nowhere, so its CheiRank is last; 'hub' is the opposite.
assert k[graph.id_of("sink")] < kstar[graph.id_of("sink")]
print("\nBoth vectors are probability distributions:",
      p.p.sum(), pstar.p.sum())
