import random
from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from token_spectra.graphs import Graph, GraphError, add_edges, edge_union, path_graph
from token_spectra.spectra import algebraic_connectivity, laplacian
from token_spectra.tokens import (
    CapExceededError,
    SubsetCodec,
    binomial_lift,
    binomial_matrix,
    binomial_project,
    token_graph,
)

from helpers import family_corpus, random_corpus


class TestSubsetCodec:
    def test_extreme_ranks(self):
        c = SubsetCodec(5, 2)
        assert c.rank((0, 1)) == 0
        assert c.rank((3, 4)) == c.size - 1 == 9

    def test_rank_order_matches_colex_enumeration(self):
        c = SubsetCodec(6, 3)
        assert [c.rank(s) for s in c.subsets()] == list(range(c.size))

    def test_roundtrip_exhaustive_8_3(self):
        c = SubsetCodec(8, 3)
        for i in range(c.size):
            assert c.rank(c.unrank(i)) == i
        for s in combinations(range(8), 3):
            assert c.unrank(c.rank(s)) == s

    @given(st.integers(2, 12), st.data())
    @settings(max_examples=60, deadline=None)
    def test_roundtrip_random(self, n, data):
        k = data.draw(st.integers(1, n - 1))
        c = SubsetCodec(n, k)
        i = data.draw(st.integers(0, c.size - 1))
        s = c.unrank(i)
        assert len(s) == k and c.rank(s) == i

    def test_wrong_cardinality(self):
        c = SubsetCodec(5, 2)
        with pytest.raises(GraphError):
            c.rank((0, 1, 2))
        with pytest.raises(GraphError):
            c.rank((1, 1))

    def test_out_of_range(self):
        c = SubsetCodec(5, 2)
        with pytest.raises(GraphError):
            c.rank((3, 5))
        with pytest.raises(GraphError):
            c.unrank(10)
        with pytest.raises(GraphError):
            SubsetCodec(5, 5)


class TestTokenGraph:
    def test_two_token_graph_of_y(self, y_tree):
        tg = token_graph(y_tree, 2)
        assert tg.graph.n == 10
        assert tg.graph.m == 12
        c = tg.codec
        assert tg.graph.has_edge(*sorted((c.rank((0, 1)), c.rank((0, 2)))))
        # the full drawn adjacency, written as subset pairs
        drawn = [
            ((0, 1), (0, 2)), ((0, 1), (1, 2)), ((1, 2), (1, 3)),
            ((0, 2), (0, 3)), ((0, 3), (2, 3)), ((2, 3), (1, 3)),
            ((1, 3), (1, 4)), ((2, 3), (2, 4)), ((0, 3), (0, 4)),
            ((2, 4), (0, 4)), ((2, 4), (1, 4)), ((2, 4), (3, 4)),
        ]
        expected = sorted(
            tuple(sorted((c.rank(a), c.rank(b)))) for a, b in drawn
        )
        assert list(tg.graph.edges) == expected

    def test_one_token_graph_is_base(self):
        for g in family_corpus(6):
            assert token_graph(g, 1).graph == g

    def test_token_graph_of_extended_y(self, y_tree):
        base = token_graph(y_tree, 2).graph
        extended = token_graph(add_edges(y_tree, [(0, 1)]), 2).graph
        c = SubsetCodec(5, 2)
        new_edges = set(extended.edges) - set(base.edges)
        expected = {
            tuple(sorted((c.rank((0, x)), c.rank((1, x))))) for x in (2, 3, 4)
        }
        assert new_edges == expected

    def test_cap(self):
        with pytest.raises(CapExceededError):
            token_graph(path_graph(30), 8, cap=1000)

    def test_serialization_header(self, y_tree):
        text = token_graph(y_tree, 2).to_edge_list_text()
        assert text.splitlines()[0] == "# token base_n=5 k=2 codec=colex"
        assert text.splitlines()[1] == "10 12"


class TestEdgeCountIdentity:
    def test_families(self):
        for g in family_corpus(8):
            for k in range(1, min(5, g.n)):
                tg = token_graph(g, k)
                assert tg.graph.m == g.m * comb(g.n - 2, k - 1)

    def test_random(self):
        for g in random_corpus(10, n_range=(4, 8), seed=2):
            for k in range(1, min(5, g.n)):
                assert token_graph(g, k).graph.m == g.m * comb(g.n - 2, k - 1)


class TestComplementSymmetry:
    def test_token_graphs_isomorphic_under_complement_codec(self):
        # mapping every subset to its complement is an explicit isomorphism
        for g in family_corpus(7) + random_corpus(6, n_range=(4, 7), seed=3):
            n = g.n
            for k in range(1, n):
                a = token_graph(g, k).graph
                b = token_graph(g, n - k).graph
                ca, cb = SubsetCodec(n, k), SubsetCodec(n, n - k)
                relabel = {}
                for s in ca.subsets():
                    comp = tuple(sorted(set(range(n)) - set(s)))
                    relabel[ca.rank(s)] = cb.rank(comp)
                mapped = sorted(
                    tuple(sorted((relabel[u], relabel[v]))) for u, v in a.edges
                )
                assert mapped == list(b.edges)


class TestDecomposition:
    def test_token_edges_split_over_edge_partition(self):
        rng = random.Random(4)
        for g in random_corpus(8, n_range=(4, 7), seed=5):
            if g.m < 2:
                continue
            for k in range(1, min(4, g.n)):
                cut = rng.randrange(1, g.m)
                g1 = Graph(g.n, g.edges[:cut])
                g2 = Graph(g.n, g.edges[cut:])
                whole = token_graph(edge_union(g1, g2), k).graph
                part1 = token_graph(g1, k).graph
                part2 = token_graph(g2, k).graph
                assert set(whole.edges) == set(part1.edges) | set(part2.edges)
                assert not set(part1.edges) & set(part2.edges)


class TestConnectivity:
    def test_connected_base_gives_connected_token_graph(self):
        for g in family_corpus(8) + random_corpus(8, n_range=(4, 8), seed=6):
            assert g.is_connected()
            for k in range(1, min(4, g.n)):
                assert token_graph(g, k).graph.is_connected()


class TestBinomialOperators:
    def test_lift_of_ones(self):
        c = SubsetCodec(6, 3)
        assert np.allclose(binomial_lift(c, np.ones(6)), 3.0)

    def test_lift_of_basis_vector_is_membership_indicator(self):
        c = SubsetCodec(6, 2)
        for j in range(6):
            e = np.zeros(6)
            e[j] = 1.0
            lifted = binomial_lift(c, e)
            for i, s in enumerate(c.subsets()):
                assert lifted[i] == (1.0 if j in s else 0.0)

    def test_lift_of_fiedler_vector_is_token_fiedler(self, y_tree):
        a, basis = algebraic_connectivity(y_tree)
        x = basis[:, 0]
        c = SubsetCodec(5, 2)
        lifted = binomial_lift(c, x)
        L2 = laplacian(token_graph(y_tree, 2).graph)
        resid = L2 @ lifted - a * lifted
        assert np.linalg.norm(resid) < 1e-9
        a2, _ = algebraic_connectivity(token_graph(y_tree, 2).graph)
        assert abs(a2 - a) < 1e-9

    def test_project_of_ones(self):
        c = SubsetCodec(6, 3)
        assert np.allclose(binomial_project(c, np.ones(c.size)), comb(5, 2))

    def test_project_lift_matches_dense_oracle(self):
        rng = np.random.default_rng(7)
        for n in range(3, 9):
            for k in range(1, n):
                c = SubsetCodec(n, k)
                B = binomial_matrix(c)
                x = rng.standard_normal(n)
                assert np.allclose(binomial_lift(c, x), B @ x)
                w = rng.standard_normal(c.size)
                assert np.allclose(binomial_project(c, w), B.T @ w)
                assert np.allclose(binomial_project(c, binomial_lift(c, x)), B.T @ (B @ x))

    def test_projection_nullspace_witness_exists(self):
        c = SubsetCodec(4, 2)
        B = binomial_matrix(c)
        _, sing, vh = np.linalg.svd(B.T)
        null_dim = c.size - int((sing > 1e-12).sum())
        assert null_dim > 0
        w = vh[-1]
        assert np.linalg.norm(binomial_project(c, w)) < 1e-12

    def test_length_mismatch(self):
        c = SubsetCodec(5, 2)
        with pytest.raises(GraphError):
            binomial_lift(c, np.ones(4))
        with pytest.raises(GraphError):
            binomial_project(c, np.ones(9))
