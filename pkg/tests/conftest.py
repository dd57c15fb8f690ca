from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from journalmap.citation import SimilarityGraph


def make_graph(n, edges, direction="citing", titles=None):
    """Small-graph helper: edges are (i, j, weight) with i < j."""
    titles = titles if titles is not None else [f"J{i}" for i in range(n)]
    ei = np.array([e[0] for e in edges], dtype=np.int64)
    ej = np.array([e[1] for e in edges], dtype=np.int64)
    w = np.array([e[2] for e in edges], dtype=np.float64)
    return SimilarityGraph(direction=direction, titles=titles,
                           nodes=np.arange(n, dtype=np.int64),
                           edge_i=ei, edge_j=ej, weights=w)


def random_graph(rng, n_max=8, connected=False):
    """Random weighted graph; optionally resampled until connected."""
    from oracles import bfs_components

    while True:
        n = int(rng.integers(2, n_max + 1))
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.55:
                    edges.append((i, j, float(rng.uniform(0.05, 1.0))))
        if not edges:
            continue
        if connected and len(bfs_components(n, [(i, j) for i, j, _ in edges])) != 1:
            continue
        return n, edges


@pytest.fixture
def two_triangles():
    return make_graph(6, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0),
                          (3, 4, 1.0), (4, 5, 1.0), (3, 5, 1.0)])
