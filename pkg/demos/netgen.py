"""Shared toy-network generator for the demo scripts."""

import numpy as np

from rgmat import DirectedGraph


def preferential_attachment(rng, n, m=5, mix=0.2, back=0.5):
    """Scale-free-ish directed graph.

    Each new node points to m existing targets chosen mostly
    proportionally to in-degree + 1; with probability ``back`` a random
    older node also links back to the newcomer, which keeps the graph
    recurrent instead of draining all probability into the seed nodes.
    """
    src, dst, pool = [], [], []
    for i in range(m):
        pool += [i, (i + 1) % m]
        src.append(i)
        dst.append((i + 1) % m)
    for t in range(m, n):
        pool.append(t)
        targets = set()
        while len(targets) < m:
            cand = (int(rng.integers(0, t)) if rng.random() < mix
                    else pool[int(rng.integers(0, len(pool)))])
            if cand != t:
                targets.add(cand)
        for v in sorted(targets):
            src.append(t)
            dst.append(v)
            pool.append(v)
        if rng.random() < back:
            src.append(int(rng.integers(0, t)))
            dst.append(t)
            pool.append(t)
    return DirectedGraph(n, np.array(src), np.array(dst))
