import numpy as np
import pytest

from rgmat import DirectedGraph


def random_graph(rng, n, avg_deg=5.0):
    """Uniform random directed graph with ~avg_deg edges per node."""
    m = int(n * avg_deg)
    src = rng.integers(0, n, size=m)
    dst = rng.integers(0, n, size=m)
    return DirectedGraph(n, src, dst)


def preferential_attachment(rng, n, m=5, mix=0.2):
    """Directed preferential-attachment graph: each new node points to m
    existing nodes chosen mostly proportionally to in-degree + 1."""
    if n <= m:
        raise ValueError("n must exceed m")
    src = []
    dst = []
    pool = []
    for i in range(m):
        pool.append(i)
        src.append(i)
        dst.append((i + 1) % m)
        pool.append((i + 1) % m)
    for t in range(m, n):
        pool.append(t)
        targets = set()
        while len(targets) < m:
            if rng.random() < mix:
                cand = int(rng.integers(0, t))
            else:
                cand = pool[int(rng.integers(0, len(pool)))]
            if cand != t:
                targets.add(cand)
        for v in sorted(targets):
            src.append(t)
            dst.append(v)
            pool.append(v)
    return DirectedGraph(n, np.array(src), np.array(dst))


def two_cycle():
    return DirectedGraph(2, [0, 1], [1, 0])


def all_dangling(n=3):
    return DirectedGraph(n, [], [])


@pytest.fixture
def rng():
    return np.random.default_rng(20130901)


@pytest.fixture
def datadir():
    import pathlib
    return pathlib.Path(__file__).parent / "data"
