import math
import random

import numpy as np
import pytest

from token_spectra.exact import char_poly, count_roots_in_interval
from token_spectra.graphs import (
    Graph,
    GraphError,
    KiteSpec,
    add_edges,
    build_kite,
    complete_graph,
    cycle_graph,
    path_graph,
    star_graph,
)
from token_spectra.spectra import (
    NumericalError,
    algebraic_connectivity,
    eig_sym,
    eigenspace_has_equal_pair,
    laplacian,
    principal_submatrix,
    rayleigh,
    theta,
)

from helpers import family_corpus, random_corpus

# 13-vertex kite with a 4-cycle head, written with level-major tail labels
# (all level-1 tail vertices first, then level 2, then level 3)
LEVEL_MAJOR_KITE = Graph(
    13,
    [(0, 1), (1, 2), (2, 3), (0, 3),
     (0, 4), (0, 5), (0, 6),
     (4, 7), (7, 10), (5, 8), (8, 11), (6, 9), (9, 12)],
)

LEVEL_MAJOR_KITE_LAPLACIAN = [
    [5, -1, 0, -1, -1, -1, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 0, -1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 2, 0, 0, -1, 0, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 2, 0, 0, -1, 0, 0, 0, 0],
    [-1, 0, 0, 0, 0, 0, 2, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 2, 0, 0, -1, 0, 0],
    [0, 0, 0, 0, 0, -1, 0, 0, 2, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 0, -1, 0, 0, 2, 0, 0, -1],
    [0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1],
]


class TestLaplacian:
    def test_k2(self):
        assert laplacian(complete_graph(2)).tolist() == [[1, -1], [-1, 1]]

    def test_empty_graph_is_zero(self):
        assert laplacian(Graph(3)).tolist() == [[0] * 3] * 3

    def test_13_vertex_kite_matrix(self):
        assert laplacian(LEVEL_MAJOR_KITE).tolist() == LEVEL_MAJOR_KITE_LAPLACIAN

    def test_row_sums_zero_and_trace(self):
        for g in family_corpus(8) + random_corpus(5, seed=11):
            L = laplacian(g)
            assert (L.sum(axis=1) == 0).all()
            assert L.trace() == sum(g.degree(v) for v in range(g.n)) == 2 * g.m
            spec = eig_sym(L)
            scale = max(1.0, float(spec.values[-1]))
            assert spec.values[0] <= 1e-9 * scale
            assert abs(spec.values.sum() - L.trace()) <= g.n * 1e-9 * scale


class TestPrincipalSubmatrix:
    def test_pendant_path_submatrix_is_tridiagonal(self):
        for r in range(1, 6):
            sub = principal_submatrix(laplacian(path_graph(r + 1)), range(1, r + 1))
            expected = np.diag([2] * (r - 1) + [1]) + np.diag([-1] * (r - 1), 1) + np.diag([-1] * (r - 1), -1)
            assert (sub == expected).all()

    def test_keep_all_is_identity_op(self):
        L = laplacian(cycle_graph(5))
        assert (principal_submatrix(L, range(5)) == L).all()

    def test_cycle_submatrix_differs_from_path_laplacian(self):
        sub = principal_submatrix(laplacian(cycle_graph(4)), [1, 2, 3])
        LP = laplacian(path_graph(3))
        diff = sub - LP
        assert diff[0, 0] == 1 and diff[2, 2] == 1
        assert diff[1, 1] == 0 and (np.diag(np.diag(diff)) == diff).all()

    def test_out_of_range(self):
        with pytest.raises(GraphError):
            principal_submatrix(laplacian(cycle_graph(4)), [4])


class TestEigSym:
    def test_k4_spectrum_and_grouping(self):
        spec = eig_sym(laplacian(complete_graph(4)))
        assert np.allclose(spec.values, [0, 4, 4, 4], atol=1e-9)
        assert [g.mult for g in spec.groups] == [1, 3]

    def test_y_tree_alpha(self, y_tree):
        spec = eig_sym(laplacian(y_tree))
        assert abs(spec.values[1] - 0.5188056959) < 1e-9

    def test_kite_alpha_is_smallest_theta(self, c4_kite_spec):
        kite, _ = build_kite(c4_kite_spec)
        spec = eig_sym(laplacian(kite))
        assert abs(spec.values[1] - theta(3, 3)) < 1e-9
        assert spec.group_of(1).mult == 2

    def test_basis_orthonormal_and_residual(self):
        for g in random_corpus(5, seed=12):
            L = laplacian(g).astype(float)
            spec = eig_sym(L)
            for grp in spec.groups:
                gram = grp.basis.T @ grp.basis
                assert np.allclose(gram, np.eye(grp.mult), atol=1e-9)
                resid = L @ grp.basis - grp.basis * np.array(grp.members)
                assert np.abs(resid).max() < 1e-8 * max(1.0, spec.values[-1])

    def test_multiplicities_sum_to_order(self):
        for g in family_corpus(7):
            spec = eig_sym(laplacian(g))
            assert sum(grp.mult for grp in spec.groups) == g.n

    def test_sign_canonicalization_deterministic(self, y_tree):
        a = eig_sym(laplacian(y_tree))
        b = eig_sym(laplacian(y_tree))
        for ga, gb in zip(a.groups, b.groups):
            assert np.array_equal(ga.basis, gb.basis)
        for grp in a.groups:
            for j in range(grp.mult):
                col = grp.basis[:, j]
                first = col[np.abs(col) > 1e-8][0]
                assert first > 0

    def test_rejects_nonsymmetric_and_nonfinite(self):
        with pytest.raises(GraphError):
            eig_sym(np.array([[0.0, 1.0], [0.0, 0.0]]))
        with pytest.raises(GraphError):
            eig_sym(np.array([[np.inf, 0.0], [0.0, 0.0]]))

    def test_json_shape(self, y_tree):
        doc = eig_sym(laplacian(y_tree)).to_json_dict()
        assert set(doc) == {"values", "groups", "tolerances"}
        assert all(set(g) == {"value", "mult"} for g in doc["groups"])


class TestAlgebraicConnectivity:
    def test_y_tree_value_and_direction(self, y_tree):
        a, basis = algebraic_connectivity(y_tree)
        assert abs(a - 0.5188056959) < 1e-9
        assert basis.shape == (5, 1)
        v = basis[:, 0] / basis[4, 0]
        assert np.allclose(
            v, [-0.59696828, -0.59696828, -0.28725774, 0.48119430, 1.0], atol=1e-7
        )

    def test_complete_graph(self):
        for n in (3, 4, 6):
            a, basis = algebraic_connectivity(complete_graph(n))
            assert abs(a - n) < 1e-9
            assert basis.shape[1] == n - 1

    def test_disconnected_is_zero(self):
        g = Graph(4, [(0, 1), (2, 3)])
        a, _ = algebraic_connectivity(g)
        assert a == 0.0

    def test_single_vertex_errors(self):
        with pytest.raises(GraphError):
            algebraic_connectivity(Graph(1))


class TestRayleigh:
    def test_fiedler_vector_gives_alpha(self, y_tree):
        a, basis = algebraic_connectivity(y_tree)
        val = rayleigh(laplacian(y_tree), basis[:, 0], edges=y_tree.edges)
        assert abs(val - a) < 1e-9

    def test_constant_vector_gives_zero(self):
        g = cycle_graph(5)
        assert abs(rayleigh(laplacian(g), np.ones(5), edges=g.edges)) < 1e-12

    def test_basis_vector_on_k2(self):
        assert rayleigh(laplacian(complete_graph(2)), [1.0, 0.0]) == 1.0

    def test_zero_vector_rejected(self):
        with pytest.raises(GraphError):
            rayleigh(laplacian(complete_graph(2)), [0.0, 0.0])

    def test_upper_bounds_alpha_on_mean_zero_vectors(self):
        rng = np.random.default_rng(13)
        for g in random_corpus(5, seed=14):
            a, _ = algebraic_connectivity(g)
            for _ in range(5):
                x = rng.standard_normal(g.n)
                x -= x.mean()
                assert rayleigh(laplacian(g), x, edges=g.edges) >= a - 1e-9


class TestTheta:
    def test_first_value(self):
        assert abs(theta(1, 1) - 1.0) < 1e-12

    def test_r3_and_r10(self):
        assert abs(theta(3, 3) - 0.1981) < 5e-5
        assert abs(theta(10, 10) - 0.0223) < 5e-5

    def test_decreasing_in_k(self):
        for r in range(1, 12):
            vals = [theta(r, k) for k in range(1, r + 1)]
            assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_range_errors(self):
        with pytest.raises(GraphError):
            theta(3, 0)
        with pytest.raises(GraphError):
            theta(3, 4)

    def test_matches_submatrix_spectrum_elementwise(self):
        for r in range(1, 13):
            sub = principal_submatrix(laplacian(path_graph(r + 1)), range(1, r + 1))
            eigs = eig_sym(sub).values
            closed = [theta(r, k) for k in range(r, 0, -1)]
            assert np.abs(np.array(closed) - eigs).max() < 1e-9


class TestEqualPairTest:
    def test_y_tree_symmetric_pair(self, y_tree):
        _, basis = algebraic_connectivity(y_tree)
        ok, wit = eigenspace_has_equal_pair(basis, (0, 1))
        assert ok
        assert abs(wit[0] - wit[1]) < 1e-12
        assert abs(abs(wit[0]) / np.abs(wit).max() - 0.59696828 / 1.0) < 1e-6

    def test_path_ends_not_equal(self):
        _, basis = algebraic_connectivity(path_graph(3))
        ok, wit = eigenspace_has_equal_pair(basis, (0, 2))
        assert not ok and wit is None

    def test_k4_any_pair(self):
        _, basis = algebraic_connectivity(complete_graph(4))
        for pair in ((0, 1), (1, 2), (2, 3)):
            ok, wit = eigenspace_has_equal_pair(basis, pair)
            assert ok
            assert abs(wit[pair[0]] - wit[pair[1]]) < 1e-9

    def test_multiple_pairs(self):
        _, basis = algebraic_connectivity(complete_graph(5))
        ok, wit = eigenspace_has_equal_pair(basis, [(0, 1), (2, 3)])
        assert ok
        assert abs(wit[0] - wit[1]) < 1e-9 and abs(wit[2] - wit[3]) < 1e-9


class TestInterlacingAndSumBounds:
    def test_edge_addition_interlacing_random(self):
        rng = random.Random(15)
        for g in random_corpus(40, n_range=(4, 10), seed=16):
            non_edges = [
                (u, v) for u in range(g.n) for v in range(u + 1, g.n)
                if not g.has_edge(u, v)
            ]
            if not non_edges:
                continue
            u, v = rng.choice(non_edges)
            w0 = eig_sym(laplacian(g)).values
            w1 = eig_sym(laplacian(add_edges(g, [(u, v)]))).values
            bound = 1e-9 * max(1.0, w1[-1])
            assert all(w0[i] <= w1[i] + bound for i in range(g.n))
            assert all(w1[i] <= w0[i + 1] + bound for i in range(g.n - 1))

    def test_row_deletion_interlacing_random(self):
        rng = random.Random(17)
        for g in random_corpus(25, n_range=(3, 9), seed=18):
            L = laplacian(g)
            drop = rng.randrange(g.n)
            keep = [i for i in range(g.n) if i != drop]
            w = eig_sym(L).values
            wsub = eig_sym(principal_submatrix(L, keep)).values
            bound = 1e-9 * max(1.0, w[-1])
            for i in range(g.n - 1):
                assert w[i] <= wsub[i] + bound
                assert wsub[i] <= w[i + 1] + bound

    def test_sum_eigenvalue_bounds_random_pairs(self):
        for seed in range(12):
            g1 = random_corpus(1, n_range=(5, 5), seed=100 + seed)[0]
            g2 = random_corpus(1, n_range=(5, 5), seed=200 + seed)[0]
            m1, m2 = laplacian(g1), laplacian(g2)
            w1 = eig_sym(m1).values
            w2 = eig_sym(m2).values
            ws = eig_sym(m1 + m2).values
            bound = 1e-9 * max(1.0, ws[-1])
            for i in range(5):
                assert w1[i] + w2[0] <= ws[i] + bound
                assert ws[i] <= w1[i] + w2[-1] + bound


class TestFloatVsExactAgreement:
    def test_eigenvalues_are_roots_of_exact_char_poly(self):
        corpus = family_corpus(7) + random_corpus(4, n_range=(9, 12), seed=19)
        for g in corpus:
            p = char_poly(laplacian(g))
            spec = eig_sym(laplacian(g))
            for grp in spec.groups:
                lam = grp.value
                assert count_roots_in_interval(p, lam - 1e-6, lam + 1e-6) >= 1
