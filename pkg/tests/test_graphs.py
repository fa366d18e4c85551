import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from parkext.graphs import (
    Multigraph,
    coboundary_coefficients,
    coboundary_polynomial,
    edge_connectivity,
    external_activity,
    initial_coefficients_check,
    random_connected_multigraph,
    spanning_trees,
    tutte,
    tutte_by_activities,
    tutte_by_subsets,
    tutte_hilbert,
)


def evaluate(poly, x, y):
    return sum(c * x**a * y**b for (a, b), c in poly.items())


def test_tutte_small_graphs():
    assert tutte(Multigraph.complete(3)) == {(2, 0): 1, (1, 0): 1, (0, 1): 1}
    path = Multigraph(4, [(1, 2), (2, 3), (3, 4)])
    assert tutte(path) == {(3, 0): 1}
    assert tutte(Multigraph(2, {(1, 2): 3})) == {(1, 0): 1, (0, 1): 1, (0, 2): 1}


def test_tutte_rejects_disconnected():
    with pytest.raises(ValueError):
        tutte(Multigraph(3, [(1, 2)]))


def test_loops_rejected():
    with pytest.raises(ValueError):
        Multigraph(2, [(1, 1)])


@pytest.mark.parametrize("seed", range(25))
def test_deletion_contraction_matches_subset_sum(seed):
    rng = random.Random(seed)
    G = random_connected_multigraph(rng, max_vertices=5, max_mult=2)
    if G.num_edges > 10:
        return
    assert tutte(G) == tutte_by_subsets(G)


@pytest.mark.parametrize("v", range(2, 6))
def test_activities_oracle_on_complete_graphs(v):
    G = Multigraph.complete(v)
    assert tutte_by_activities(G) == tutte(G)


@pytest.mark.parametrize("v", range(2, 7))
def test_cayley(v):
    assert len(spanning_trees(Multigraph.complete(v))) == v ** (v - 2)


def test_tree_has_no_external_activity():
    T = Multigraph(4, [(1, 2), (1, 3), (3, 4)])
    (tree,) = spanning_trees(T)
    assert external_activity(T, tree) == set()


def test_tutte_hilbert_values():
    assert tutte_hilbert(Multigraph.complete(3)) == [1, 2]
    assert tutte_hilbert(Multigraph.complete(4)) == [1, 3, 6, 6]
    assert tutte_hilbert(Multigraph(3, [(1, 2), (2, 3)])) == [1]
    assert sum(tutte_hilbert(Multigraph.complete_lm(3, 2, 2))) == 128


@pytest.mark.parametrize("n,ell,m", [(1, 1, 1), (2, 1, 1), (3, 1, 1), (4, 1, 1), (5, 1, 1), (3, 2, 2), (3, 1, 2), (3, 3, 2), (4, 2, 2)])
def test_tutte_total_counts_parking_like_objects(n, ell, m):
    assert sum(tutte_hilbert(Multigraph.complete_lm(n, ell, m))) == ell * (m * n + ell) ** (n - 1)


@pytest.mark.parametrize("v", range(2, 7))
def test_initial_coefficients_on_complete_graphs(v):
    assert initial_coefficients_check(Multigraph.complete(v))


def test_initial_coefficients_need_edge_connectivity():
    # A path on three vertices: the q^1 coefficient is 0, not v - 1 = 2.
    path = Multigraph(3, [(1, 2), (2, 3)])
    assert not initial_coefficients_check(path)
    assert edge_connectivity(path) == 1


@pytest.mark.parametrize("seed", range(20))
def test_initial_coefficients_when_edge_connectivity_is_high(seed):
    rng = random.Random(1000 + seed)
    G = random_connected_multigraph(rng, max_vertices=6, max_mult=2)
    if edge_connectivity(G) >= G.num_vertices - 1:
        assert initial_coefficients_check(G)
    else:
        # a minimum cut of size below v - 1 forces some coefficient below the binomial
        coeffs = tutte_hilbert(G)
        v = G.num_vertices
        assert any(
            (coeffs[k] if k < len(coeffs) else 0) != comb(v + k - 2, k) for k in range(v - 1)
        )


def test_coboundary_k3():
    assert coboundary_coefficients(Multigraph.complete(3), 2) == [0, 6, 0, 2]


@pytest.mark.parametrize("v", range(2, 6))
@pytest.mark.parametrize("lam", [1, 2, 3])
def test_coboundary_vanishing_on_complete_graphs(v, lam):
    G = Multigraph.complete(v)
    c = coboundary_coefficients(G, lam)
    e = G.num_edges
    assert c[e] == lam
    assert all(c[i] == 0 for i in range(e - v + 2, e))


@pytest.mark.parametrize("G", [Multigraph.complete(3), Multigraph.complete(4), Multigraph(3, {(1, 2): 2, (2, 3): 1, (1, 3): 1})])
def test_coboundary_tutte_identity(G):
    # (1/lam) sum_i c_i nu^i = (nu - 1)^(v-1) T((lam + nu - 1)/(nu - 1), nu)
    T = tutte(G)
    v = G.num_vertices
    for lam in (2, 3):
        for nu in (2, 3):
            c = coboundary_coefficients(G, lam)
            lhs = sum(ci * nu**i for i, ci in enumerate(c))
            rhs = lam * (nu - 1) ** (v - 1) * evaluate(T, Fraction(lam + nu - 1, nu - 1), nu)
            assert lhs == rhs


def test_coboundary_polynomial_constant_term():
    chi = coboundary_polynomial(Multigraph.complete(3))
    # lam = 1: one colouring, all three edges monochromatic
    assert sum(c for (a, b), c in chi.items() if b == 3) == 1


def test_slim_count_is_connected_spanning_count():
    from parkext.polyengine import enum_slim

    G = Multigraph.complete(4)
    edges = G.edge_list()
    connected = 0
    for r in range(len(edges) + 1):
        for subset in combinations(edges, r):
            connected += Multigraph(4, list(subset)).is_connected()
    assert connected == len(enum_slim(3)) == 38
