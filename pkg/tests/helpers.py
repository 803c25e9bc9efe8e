"""Shared test utilities: instance corpora and graph-class enumeration."""

from __future__ import annotations

import random
from itertools import combinations, permutations

import numpy as np

from token_spectra.graphs import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    random_connected_gnp,
    random_tree,
    star_graph,
)

# known counts of connected graphs up to isomorphism, indexed by n
CONNECTED_CLASS_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}


def connected_class_representatives(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs on n vertices.

    Canonical form of a labeled graph is the minimum edge-set bitmask over
    all vertex permutations; the remapping runs vectorized over every mask
    at once, which keeps n = 6 (32768 masks x 720 permutations) fast.
    """
    edge_list = list(combinations(range(n), 2))
    m = len(edge_list)
    eidx = {e: i for i, e in enumerate(edge_list)}
    masks = np.arange(1 << m, dtype=np.int64)
    canon = masks.copy()
    for perm in permutations(range(n)):
        table = [eidx[tuple(sorted((perm[u], perm[v])))] for u, v in edge_list]
        remapped = np.zeros_like(masks)
        for b in range(m):
            remapped |= ((masks >> b) & np.int64(1)) << np.int64(table[b])
        np.minimum(canon, remapped, out=canon)
    reps = masks[masks == canon]
    out = []
    for mask in reps.tolist():
        edges = tuple(edge_list[b] for b in range(m) if (mask >> b) & 1)
        g = Graph(n, edges)
        if g.is_connected():
            out.append(g)
    return out


def family_corpus(max_n: int = 8) -> list[Graph]:
    """Deterministic mix of standard families up to max_n vertices."""
    out: list[Graph] = []
    for n in range(2, max_n + 1):
        out.append(path_graph(n))
    for n in range(3, max_n + 1):
        out.append(cycle_graph(n))
    for n in range(2, min(max_n, 6) + 1):
        out.append(complete_graph(n))
    for n1 in range(1, 4):
        for n2 in range(n1, 5):
            if n1 + n2 <= max_n:
                out.append(complete_bipartite_graph(n1, n2))
    out.append(star_graph(max_n - 1))
    return out


def random_corpus(count: int, n_range=(4, 8), seed: int = 0, p: float = 0.5) -> list[Graph]:
    rng = random.Random(seed)
    lo, hi = n_range
    return [
        random_connected_gnp(rng.randint(lo, hi), p, rng) for _ in range(count)
    ]


def random_tree_corpus(count: int, n_range=(3, 8), seed: int = 1) -> list[Graph]:
    rng = random.Random(seed)
    lo, hi = n_range
    return [random_tree(rng.randint(lo, hi), rng) for _ in range(count)]
