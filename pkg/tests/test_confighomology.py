from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from symstrat import confighomology as ch
from symstrat.errors import ResourceBoundError
from symstrat.graded import GradedDim
from symstrat.partitions import Partition, ord_set_partitions

P = Partition.parse


def test_small_ordered_modules():
    assert ch.ordered_config_module(2, 3).graded_dims == GradedDim([1, 3, 2])
    assert ch.ordered_config_module(5, 1).graded_dims == GradedDim([1])
    mod = ch.ordered_config_module(3, 2)
    assert mod.graded_dims == GradedDim([1, 0, 1])
    assert mod.trace_by_degree((2, 1)) == (1, -1)


def test_guard():
    with pytest.raises(ResourceBoundError):
        ch.ordered_config_module(2, 9)


def test_straightening_three_term_relation():
    # A_31 A_32 = A_21 A_32 - A_21 A_31
    assert ch.straighten([(3, 1), (3, 2)], 2) == {((2, 1), (3, 2)): 1, ((2, 1), (3, 1)): -1}
    assert ch.straighten([(2, 1), (3, 1)], 2) == {((2, 1), (3, 1)): 1}
    assert ch.straighten([(3, 1), (2, 1)], 2) == {((2, 1), (3, 1)): -1}
    assert ch.straighten([(3, 1), (2, 1)], 3) == {((2, 1), (3, 1)): 1}
    assert ch.straighten([(2, 1), (2, 1)], 2) == {}
    assert ch.straighten([(1, 2)], 3) == {((2, 1),): -1}
    assert ch.straighten([(1, 2)], 2) == {((2, 1),): 1}


@pytest.mark.parametrize("n, d", [(n, d) for n in range(1, 6) for d in (2, 3)])
def test_presentation(n, d):
    assert ch.presentation_check(n, d) == []


@pytest.mark.parametrize("n", range(1, 6))
def test_relations(n):
    for d in (2, 3):
        assert ch.check_relations(ch.ordered_config_module(d, n)) == []


def test_unordered_configurations():
    mod2 = ch.ordered_config_module(2, 2)
    assert ch.colored_coinvariants(mod2, P("2")) == GradedDim([1, 1])
    mod3 = ch.ordered_config_module(3, 2)
    assert ch.colored_coinvariants(mod3, P("2")) == GradedDim([1])
    for n in range(2, 7):
        assert ch.colored_coinvariants(ch.ordered_config_module(2, n), P(str(n))) == GradedDim([1, 1])


def test_two_colors_in_the_plane():
    # F(R^2, 3) / S_2: worked out by hand with the Lefschetz number of the swap
    mod = ch.ordered_config_module(2, 3)
    assert ch.colored_coinvariants(mod, P("2,1")) == GradedDim([1, 2, 1])


def test_all_distinct_colors_keep_everything():
    mod = ch.ordered_config_module(2, 4)
    assert ch.colored_coinvariants(mod, P("1,1,1,1")) == mod.graded_dims


def test_sign_twist_in_odd_dimension():
    mod = ch.ordered_config_module(3, 2)
    assert ch.colored_coinvariants(mod, P("2"), ch.SIGN) == GradedDim({2: 1})


def test_strata_examples():
    assert ch.stratum_homology(P("1,2"), 2) == GradedDim([1, 1])
    assert ch.stratum_homology(P("1,1"), 2) == GradedDim([1, 1])
    assert ch.stratum_homology(P("4"), 3, "plain") == GradedDim([1])
    assert ch.stratum_homology(P("5"), 2) == GradedDim([1])
    assert ch.stratum_compact_support(P("1,2"), 2) == GradedDim({3: 1, 4: 1})
    assert ch.stratum_compact_support(P("2"), 2) == GradedDim({2: 1})


def test_odd_dimension_modes():
    # the compactly supported classes of C_2(R^3) sit in degree 4
    assert ch.stratum_compact_support(P("1,1"), 3, "plain") == GradedDim({4: 1})
    assert ch.stratum_homology(P("1,1"), 3) == GradedDim([1])
    # a part of size >= 2 kills the twisted group
    assert ch.stratum_homology(P("2"), 3) == GradedDim()
    assert ch.stratum_homology(P("2,1"), 5) == GradedDim()
    assert ch.stratum_homology(P("2"), 3, "plain") == GradedDim([1])


def test_bad_mode():
    with pytest.raises(ValueError):
        ch.stratum_homology(P("2"), 3, "weird")


def test_perm_sign_and_cycle_type():
    assert ch.perm_sign((2, 1, 3)) == -1
    assert ch.perm_sign((2, 3, 1)) == 1
    assert ch._cycle_type((2, 3, 1, 5, 4)) == (3, 2)


def colorings(n):
    from symstrat.partitions import partitions_of

    return list(partitions_of(n))


@pytest.mark.parametrize("n", range(1, 5))
def test_trace_formula_matches_projector_rank(n):
    for d in (2, 3):
        mod = ch.ordered_config_module(d, n)
        for colors in colorings(n):
            for twist in (ch.TRIVIAL, ch.SIGN):
                assert ch.colored_coinvariants(mod, colors, twist) == ch.projector_rank(mod, colors, twist)


@pytest.mark.parametrize("shape", ["2,1", "2,2", "3,1", "2,1,1", "1,1,1"])
def test_eta_trace_matches_projector_rank(shape):
    lam = P(shape)
    m, colors = ch.stratum_points(lam)
    for d in (2, 3):
        mod = ch.ordered_config_module(d, m)
        for sp in ord_set_partitions(lam)[:4]:
            tw = ch.TwistCharacter.eta(sp)
            assert ch.colored_coinvariants(mod, colors, tw) == ch.projector_rank(mod, colors, tw)


def test_trace_by_degree_matches_matrices():
    mod = ch.ordered_config_module(2, 4)
    for perm in permutations(range(1, 5)):
        cols = mod.action_matrix(perm)
        by_len = [0] * 4
        for j, col in enumerate(cols):
            by_len[len(mod.basis[j])] += col.get(j, 0)
        assert tuple(by_len) == mod.trace_by_degree(perm)


small_lams = st.lists(st.integers(1, 3), min_size=1, max_size=4).map(Partition)


@given(small_lams, st.sampled_from([2, 3, 4]), st.integers(0, 2))
def test_stratum_stability_in_ones(lam, d, extra):
    # adding a point of multiplicity one leaves homology unchanged up to the number of ones
    if lam.r + extra + 1 > 6:
        return
    base = Partition(lam.parts + (1,) * extra)
    a = ch.stratum_homology(base, d)
    b = ch.stratum_homology(Partition(base.parts + (1,)), d)
    i = base.ones
    bound = i if d > 2 else i - 1
    for q in range(bound + 1):
        assert a[q] == b[q]


@given(small_lams, st.sampled_from([2, 3]))
def test_coinvariants_bounded_by_module(lam, d):
    m, colors = ch.stratum_points(lam)
    mod = ch.ordered_config_module(d, m)
    got = ch.colored_coinvariants(mod, colors)
    assert all(got[q] <= mod.graded_dims[q] for q in range(len(mod.graded_dims)))
    assert got[0] == 1
