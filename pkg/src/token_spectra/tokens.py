"""k-token graphs and the colexicographic subset indexing behind them.

A vertex of the k-token graph stands for a k-subset of the base graph's
vertices; two subsets are adjacent exactly when their symmetric difference
is an edge of the base graph. Subsets are indexed in colexicographic
order, which makes a rank computable in O(k) from a binomial table with no
scan over n.

The lift operator sends a vector on the base graph to the vector of
subset sums on the token graph; the projection is its transpose. Neither
ever materializes the full 0/1 subset-membership matrix, so they stay
usable at token scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .graphs import Graph, GraphError, format_edge_list

DEFAULT_CAP = 200_000


class CapExceededError(RuntimeError):
    """Token graph would exceed the configured vertex cap."""


def _colex(n: int, k: int) -> Iterator[tuple[int, ...]]:
    # yields all k-subsets of range(n) in colexicographic (rank) order
    if k == 0:
        yield ()
        return
    for top in range(k - 1, n):
        for rest in _colex(top, k - 1):
            yield rest + (top,)


@dataclass(frozen=True)
class SubsetCodec:
    """Bijection between k-subsets of [0, n) and ranks [0, C(n, k))."""

    n: int
    k: int

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.n - 1:
            raise GraphError(f"need 1 <= k <= n-1, got n={self.n} k={self.k}")

    @property
    def size(self) -> int:
        return comb(self.n, self.k)

    @cached_property
    def _choose(self) -> tuple[tuple[int, ...], ...]:
        # Pascal table choose[m][j] for m <= n, j <= k (Python ints, no overflow)
        table = []
        for m in range(self.n + 1):
            row = [comb(m, j) for j in range(self.k + 1)]
            table.append(tuple(row))
        return tuple(table)

    def rank(self, subset: Sequence[int]) -> int:
        """Colex rank: sum of C(s_j, j+1) over the sorted elements."""
        s = sorted(subset)
        if len(s) != self.k:
            raise GraphError(f"subset has {len(s)} elements, expected {self.k}")
        if any(a == b for a, b in zip(s, s[1:])):
            raise GraphError(f"repeated element in subset {subset}")
        if s and not (0 <= s[0] and s[-1] < self.n):
            raise GraphError(f"subset {subset} out of range for n={self.n}")
        choose = self._choose
        return sum(choose[v][j + 1] for j, v in enumerate(s))

    def unrank(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self.size:
            raise GraphError(f"rank {i} out of range [0, {self.size})")
        choose = self._choose
        rem = i
        out = []
        m = self.n
        for j in range(self.k, 0, -1):
            m -= 1
            while choose[m][j] > rem:
                m -= 1
            out.append(m)
            rem -= choose[m][j]
        return tuple(reversed(out))

    def subsets(self) -> Iterator[tuple[int, ...]]:
        """All k-subsets in rank order."""
        return _colex(self.n, self.k)


@dataclass(frozen=True)
class TokenGraph:
    """A base graph together with its k-token graph and subset codec."""

    base: Graph
    k: int
    graph: Graph
    codec: SubsetCodec

    def to_edge_list_text(self) -> str:
        header = f"token base_n={self.base.n} k={self.k} codec=colex"
        return format_edge_list(self.graph, header=header)


def token_graph(g: Graph, k: int, cap: int = DEFAULT_CAP) -> TokenGraph:
    """Build the k-token graph of g.

    Edge generation iterates over base edges (u, v) and (k-1)-subsets of
    the remaining vertices, costing |E| * C(n-2, k-1) rather than a
    pairwise comparison over all subsets.
    """
    codec = SubsetCodec(g.n, k)
    size = codec.size
    if size > cap:
        raise CapExceededError(
            f"token graph would have {size} vertices, cap is {cap}"
        )
    edges = []
    for u, v in g.edges:
        rest = [w for w in range(g.n) if w != u and w != v]
        for s in combinations(rest, k - 1):
            a = codec.rank(s + (u,))
            b = codec.rank(s + (v,))
            edges.append((a, b) if a < b else (b, a))
    tg = Graph(size, tuple(edges))
    expected = g.m * comb(g.n - 2, k - 1)
    if tg.m != expected:
        raise AssertionError(
            f"token edge count {tg.m} != |E|*C(n-2,k-1) = {expected}"
        )
    return TokenGraph(base=g, k=k, graph=tg, codec=codec)


def binomial_lift(codec: SubsetCodec, x: Sequence[float]) -> np.ndarray:
    """Lift a base-graph vector: output at rank(A) is the sum of x over A."""
    vec = np.asarray(x, dtype=float)
    if vec.shape != (codec.n,):
        raise GraphError(f"vector has length {vec.shape}, expected {codec.n}")
    vals = vec.tolist()
    out = np.empty(codec.size)
    for i, subset in enumerate(codec.subsets()):
        out[i] = sum(vals[a] for a in subset)
    return out


def binomial_project(codec: SubsetCodec, w: Sequence[float]) -> np.ndarray:
    """Project a token-graph vector: entry j sums w over subsets containing j."""
    vec = np.asarray(w, dtype=float)
    if vec.shape != (codec.size,):
        raise GraphError(f"vector has length {vec.shape}, expected {codec.size}")
    out = np.zeros(codec.n)
    for i, subset in enumerate(codec.subsets()):
        wi = vec[i]
        for a in subset:
            out[a] += wi
    return out


def binomial_matrix(codec: SubsetCodec, max_size: int = 100_000) -> np.ndarray:
    """Dense C(n,k) x n 0/1 subset-membership matrix, for small instances only."""
    if codec.size > max_size:
        raise CapExceededError(f"refusing to materialize a {codec.size} x {codec.n} matrix")
    out = np.zeros((codec.size, codec.n))
    for i, subset in enumerate(codec.subsets()):
        out[i, list(subset)] = 1.0
    return out
