from itertools import combinations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from symstrat.partitions import (
    Partition,
    add_ones,
    all_collapses,
    canonical_set_partition,
    col,
    collapses_by_depth,
    is_collapse_of,
    ord_set_partitions,
    partitions_of,
    stab_collapse_check,
    stabilizer_shape,
)

P = Partition.parse


def merges_oracle(parts):
    """Every partition reachable by repeated merging, with its merge count."""
    seen = {tuple(sorted(parts, reverse=True)): 0}
    frontier = [tuple(sorted(parts, reverse=True))]
    while frontier:
        nxt = []
        for cur in frontier:
            for a, b in combinations(range(len(cur)), 2):
                rest = [x for t, x in enumerate(cur) if t not in (a, b)]
                new = tuple(sorted(rest + [cur[a] + cur[b]], reverse=True))
                if new not in seen:
                    seen[new] = len(parts) - len(new)
                    nxt.append(new)
        frontier = nxt
    return seen


partition_st = st.lists(st.integers(1, 4), min_size=1, max_size=6).map(Partition)


def test_empty_partition():
    assert P("") == Partition()
    assert P("").k == 0


def test_parse_and_print_order():
    lam = P("1,2,1")
    assert lam.parts == (2, 1, 1)
    assert str(lam) == "2,1,1"
    assert (lam.k, lam.r, lam.ones) == (4, 3, 2)
    assert P("1+2") == P("2,1")


@pytest.mark.parametrize("text", ["0,1", "a", "-1,2", "1,,2"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        P(text)


@pytest.mark.parametrize(
    "lam, j, expected",
    [("2,3", 2, "3,2,1,1"), ("2", 0, "2"), ("2", 2, "2,1,1")],
)
def test_add_ones(lam, j, expected):
    assert add_ones(P(lam), j) == P(expected)


def test_add_ones_counts():
    big = add_ones(P("2"), 2)
    assert (big.ones, big.k, big.r) == (2, 4, 3)


def test_collapses_of_one_plus_two():
    assert collapses_by_depth(P("1,2")) == {0: [P("2,1")], 1: [P("3")]}
    assert col(P("1,2"), 2) == []


def test_collapses_of_one_one_two():
    levels = collapses_by_depth(P("1,1,2"))
    assert levels == {0: [P("2,1,1")], 1: [P("2,2"), P("3,1")], 2: [P("4")]}


def test_single_part():
    assert collapses_by_depth(P("5")) == {0: [P("5")]}


@pytest.mark.parametrize(
    "lam, other, expected",
    [("1,1,1,1,2,3", "1,2,2,4", True), ("2,3", "2,3", True), ("2,2", "1,3", False), ("2,2", "4", True)],
)
def test_is_collapse_of(lam, other, expected):
    assert is_collapse_of(P(lam), P(other)) is expected


def test_stab_collapse_examples():
    res = stab_collapse_check(P("2"), 2, 1)
    assert res.bijective
    assert sorted(img for _, img in res.pairs) == sorted([P("3,1,1"), P("2,2,1")])
    res = stab_collapse_check(P("2"), 1, 1)
    assert not res.bijective and res.injective
    assert res.unhit == (P("2,2"),)
    assert stab_collapse_check(P("3,2"), 1, 0).bijective


def test_stated_bijection_range_has_counterexamples():
    # t fails to be onto at depth 2 already for lambda=2, j=3
    res = stab_collapse_check(P("2"), 3, 2)
    assert not res.bijective
    assert P("2,2,2") in res.unhit


def test_ones_bound_counterexample():
    assert P("2,2") in col(add_ones(P("1"), 3), 2)


def test_set_partitions_of_one_plus_two():
    blocks = sorted(str(s) for s in ord_set_partitions(P("1,2")))
    assert blocks == ["{1,2}{3}", "{1,3}{2}", "{1}{2,3}"]
    assert len(ord_set_partitions(P("1,1"))) == 1
    assert len(ord_set_partitions(P("2,2"))) == 3


def test_set_partition_guard():
    from symstrat.errors import ResourceBoundError

    with pytest.raises(ResourceBoundError):
        ord_set_partitions(P("1," * 12 + "1"))


@pytest.mark.parametrize(
    "shape, factors, order",
    [("2,2", {2: 2}, 8), ("1,1,1", {1: 3}, 6), ("1,2", {1: 1, 2: 1}, 2)],
)
def test_stabilizer_shape(shape, factors, order):
    s = stabilizer_shape(canonical_set_partition(P(shape)))
    assert s.factors == factors
    assert s.order == order


def test_partition_counts():
    # p(k) for k = 0..10
    assert [sum(1 for _ in partitions_of(k)) for k in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


@given(partition_st)
def test_collapse_poset_matches_merge_oracle(lam):
    oracle = merges_oracle(lam.parts)
    levels = collapses_by_depth(lam)
    got = {mu.parts: p for p, v in levels.items() for mu in v}
    assert got == oracle
    assert all_collapses(lam) == {Partition(t) for t in oracle}


@given(partition_st, partition_st)
def test_is_collapse_of_matches_poset(lam, other):
    if other.k != lam.k:
        other = Partition((lam.k,))
    assert is_collapse_of(lam, other) == (other in all_collapses(lam))


@given(partition_st, st.integers(0, 5), st.integers(0, 5))
def test_collapse_ones_sharp_bound(lam, j, p):
    for mu in col(add_ones(lam, j), p):
        assert mu.ones >= lam.ones + j - 2 * p


@given(partition_st, st.integers(0, 5), st.integers(0, 5))
def test_stabilization_injective_and_onto_for_large_j(lam, j, p):
    res = stab_collapse_check(lam, j, p)
    assert res.injective
    if j >= 2 * p:
        assert res.bijective


@given(partition_st)
def test_set_partition_count_closed_form(lam):
    if lam.k > 8:
        return
    denom = 1
    for l, n in lam.multiplicities.items():
        denom *= factorial(l) ** n * factorial(n)
    sets = ord_set_partitions(lam)
    assert len(sets) == factorial(lam.k) // denom
    assert len({str(s) for s in sets}) == len(sets)
    assert all(s.shape == lam for s in sets)
