"""Density of nodes on the (ln K, ln K*) plane.

Each node has a PageRank index K and a CheiRank index K*; a 2-d
histogram over logarithmically equidistant cells shows how authority
and communicativity correlate across the network.
"""

import os

import numpy as np
from netgen import preferential_attachment

from rgmat import GoogleOperator, cheirank, density_grid, pagerank
from rgmat.serialize import write_density_csv

rng = np.random.default_rng(11)
graph = preferential_attachment(rng, 3000)
op = GoogleOperator(graph, alpha=0.85)
p = pagerank(op)
pstar = cheirank(graph)

grid = density_grid(p, pstar, bins=40)
print(f"grid totals {int(grid.counts.sum())} nodes over "
      f"{grid.counts.shape[0]}x{grid.counts.shape[1]} cells")

outdir = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(outdir, exist_ok=True)
csv_path = os.path.join(outdir, "density.csv")
write_density_csv(csv_path, grid)
print("wrote", csv_path)

# a coarse terminal rendering: denser cells get darker glyphs
shades = " .:*#@"
peak = max(1, int(grid.counts.max()))
for row in grid.counts.T[::-4]:
    line = "".join(
        shades[min(len(shades) - 1, int(5 * c / peak) + (1 if c else 0))]
        for c in row[::4])
    print(line)

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(np.log1p(grid.counts).T, origin="lower", cmap="jet",
              extent=(0, grid.k_edges[-1], 0, grid.kstar_edges[-1]))
    ax.set_xlabel("ln K")
    ax.set_ylabel("ln K*")
    png_path = os.path.join(outdir, "density.png")
    fig.savefig(png_path, dpi=150)
    print("wrote", png_path)
except ImportError:
    print("matplotlib not installed; skipped the png")
