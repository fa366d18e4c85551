from itertools import permutations, product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from parkext.combinatorics import (
    DyckPath,
    act_on_sequence,
    catalan,
    count_sub_staircase_monomials,
    dominates,
    enum_dyck_paths,
    enum_parking_functions,
    enum_partitions,
    grevlex_less,
    is_parking_function,
    labeled_path_to_parking,
    mult_partition,
    parking_to_labeled_path,
    staircase,
    sub_staircase_partitions,
    young_contains,
)

vectors = st.integers(1, 5).flatmap(
    lambda k: st.tuples(*[st.lists(st.integers(0, 4), min_size=k, max_size=k)] * 3)
)


def test_mult_examples():
    assert mult_partition((4, 4, 3, 3, 3, 1, 0, 0)) == (3, 2, 2, 1)
    assert mult_partition((0, 0, 0)) == (3,)
    assert mult_partition((2, 1, 0)) == (1, 1, 1)


def test_grevlex_small_cases():
    assert grevlex_less((1, 1, 0), (2, 0, 0))
    assert grevlex_less((2, 1, 0), (1, 1, 1)) is False
    assert grevlex_less((1, 1, 1), (2, 1, 0))
    # last nonzero entry of the difference decides
    assert grevlex_less((2, 0, 1), (1, 2, 0))
    with pytest.raises(ValueError):
        grevlex_less((1,), (1, 0))


@given(vectors)
def test_grevlex_is_a_strict_total_order(triple):
    a, b, c = triple
    assert not grevlex_less(a, a)
    if a != b:
        assert grevlex_less(a, b) != grevlex_less(b, a)
    if grevlex_less(a, b) and grevlex_less(b, c):
        assert grevlex_less(a, c)


@pytest.mark.parametrize("n", range(1, 9))
def test_grevlex_extends_dominance(n):
    parts = enum_partitions(n)
    for lam in parts:
        for mu in parts:
            if lam != mu and dominates(lam, mu):
                pad = lambda p: p + (0,) * (n - len(p))
                assert grevlex_less(pad(mu), pad(lam))


def test_partition_counts():
    assert [len(enum_partitions(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert enum_partitions(4)[0] == (4,) and enum_partitions(4)[-1] == (1, 1, 1, 1)


def test_young_containment():
    assert young_contains((2, 1), (3, 2, 1))
    assert not young_contains((2, 2, 2), (3, 2, 1))


def test_staircase():
    assert staircase(4) == (3, 2, 1, 0)
    assert staircase(3, 2, 2) == (5, 3, 1)
    assert staircase(4, 3, 2) == (8, 6, 4, 2)


@pytest.mark.parametrize("n", range(1, 8))
def test_dyck_paths_are_catalan(n):
    assert len(enum_dyck_paths(n)) == catalan(n)


@pytest.mark.parametrize("n,ell,m", [(2, 1, 2), (3, 2, 2), (3, 1, 2), (3, 3, 2), (4, 2, 2), (4, 3, 2)])
def test_lm_path_counts(n, ell, m):
    # rational Catalan-type count ell/(mn+ell) * binom((m+1)n+ell-1, n)
    expected = ell * comb((m + 1) * n + ell - 1, n) // (m * n + ell)
    assert len(enum_dyck_paths(n, ell, m)) == expected


@pytest.mark.parametrize("n,ell,m", [(3, 1, 1), (4, 1, 1), (3, 2, 2), (3, 1, 2), (4, 3, 2)])
def test_sub_staircase_monomials_count_parking_like_objects(n, ell, m):
    assert count_sub_staircase_monomials(n, ell, m) == ell * (m * n + ell) ** (n - 1)


def test_path_validation():
    with pytest.raises(ValueError):
        DyckPath(3, (3, 0, 0))
    with pytest.raises(ValueError):
        DyckPath(3, (1, 2, 0))
    assert DyckPath(5, (4, 2, 1, 0, 0)).run_partition == (2, 1, 1, 1)


def test_steps_and_runs():
    D = DyckPath(3, (1, 1, 0))
    assert D.runs() == [(0, 1), (1, 2)]
    assert D.steps() == "NENNEE"
    assert D.area == 2


@pytest.mark.parametrize("n", range(1, 7))
def test_run_partition_is_mult_of_area_partition(n):
    for D in enum_dyck_paths(n):
        lengths = tuple(sorted((length for _, length in D.runs()), reverse=True))
        assert lengths == D.run_partition == mult_partition(D.mu)


@pytest.mark.parametrize("n", range(1, 7))
def test_parking_function_enumeration(n):
    brute = [p for p in product(range(1, n + 1), repeat=n) if is_parking_function(p)]
    assert enum_parking_functions(n) == sorted(brute)
    assert len(brute) == (n + 1) ** (n - 1)


@pytest.mark.parametrize("n", range(1, 7))
def test_labeled_path_bijection(n):
    seen = set()
    for prefs in enum_parking_functions(n):
        path, blocks = parking_to_labeled_path(prefs)
        assert labeled_path_to_parking(path, blocks) == prefs
        seen.add((path.mu, tuple(blocks)))
    assert len(seen) == (n + 1) ** (n - 1)


def test_labeled_path_errors():
    D = DyckPath(3, (1, 1, 0))
    assert labeled_path_to_parking(D, [{2}, {1, 3}]) == (2, 1, 2)
    with pytest.raises(ValueError):
        labeled_path_to_parking(D, [{1, 2}, {3}])
    with pytest.raises(ValueError):
        labeled_path_to_parking(D, [{1}])
    with pytest.raises(ValueError):
        labeled_path_to_parking(DyckPath(2, (1, 0), 1, 2), [{1}, {2}])


def test_action_preserves_parking_functions():
    prefs = enum_parking_functions(4)
    pool = set(prefs)
    for w in permutations(range(1, 5)):
        assert all(act_on_sequence(w, p) in pool for p in prefs)
    assert act_on_sequence((2, 3, 1), (1, 1, 2)) == (1, 2, 1)


def test_sub_staircase_is_sorted_grevlex():
    parts = sub_staircase_partitions(3, 2, 2)
    assert all(grevlex_less(a, b) for a, b in zip(parts, parts[1:]))
