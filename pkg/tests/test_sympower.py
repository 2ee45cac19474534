from math import comb

import pytest
from hypothesis import given, strategies as st

from symstrat import _linalg as la
from symstrat.graded import GradedDim
from symstrat.manifolds import BUILTIN
from symstrat.sympower import (
    WeightedBasis,
    divided_transfer,
    stabilization_operator,
    sym_betti,
    sym_betti_oracle,
    transfer_operator,
    transfer_oracle,
    verify_dold,
)

S2 = GradedDim([1, 0, 1])
CIRCLE = GradedDim([1, 1])
TORUS = GradedDim([1, 2, 1])

small_profile = st.lists(st.integers(0, 2), min_size=0, max_size=3).map(lambda t: GradedDim([1] + t))


def cpk(k):
    return GradedDim([1 if q % 2 == 0 else 0 for q in range(2 * k + 1)])


@pytest.mark.parametrize("k", range(0, 11))
def test_sym_of_sphere_is_projective_space(k):
    assert sym_betti(S2, k) == cpk(k)


def test_frozen_values():
    assert sym_betti(S2, 3) == GradedDim([1, 0, 1, 0, 1, 0, 1])
    assert sym_betti(GradedDim([1]), 7) == GradedDim([1])
    assert sym_betti(CIRCLE, 4) == GradedDim([1, 1])
    # Sym_2 of a torus is a sphere bundle over the torus
    assert sym_betti(TORUS, 2) == GradedDim([1, 2, 2, 2, 1])
    # Sym_k of a wedge of n circles: exterior powers up to degree k
    assert sym_betti(GradedDim([1, 4]), 2) == GradedDim([1, 4, 6])
    assert sym_betti(S2, 0) == GradedDim([1])


def test_oracle_examples():
    assert sym_betti_oracle(S2, 2) == GradedDim([1, 0, 1, 0, 1])
    assert sym_betti_oracle(GradedDim([1]), 5) == GradedDim([1])
    assert sym_betti_oracle(CIRCLE, 3) == GradedDim([1, 1])


def test_stabilization_example():
    t = stabilization_operator(S2, 2)
    assert t.shape == (4, 3)
    for q in (0, 2, 4):
        assert t.block(q) == [[1]]
    assert t.block(6) == [[] for _ in range(1)]


def test_transfer_kills_unit_free_monomials():
    tau = transfer_operator(S2, 1)
    basis = WeightedBasis(S2, 1)
    col = basis.index()[(0, 1)]
    assert all(row[col] == 0 for row in tau.matrix)


def test_transfer_needs_points():
    with pytest.raises(ValueError):
        transfer_operator(S2, 0)


def test_commutator_on_unit_profile():
    one = GradedDim([1])
    for k in range(6):
        ts = la.matmul(transfer_operator(one, k + 1).matrix, stabilization_operator(one, k).matrix)
        st_ = la.matmul(stabilization_operator(one, k - 1).matrix, transfer_operator(one, k).matrix) if k else [[0]]
        assert ts == [[k + 1]]
        assert st_ == [[k]]


def test_matrices_render_as_fractions():
    doc = transfer_operator(S2, 2).to_json()
    assert all("/" in x for row in doc["matrix"] for x in row)
    assert doc["source"][0].startswith("u")


@pytest.mark.parametrize("betti, k_max", [(S2, 6), (GradedDim([1]), 6), (CIRCLE, 4), (TORUS, 4)])
def test_dold_identities(betti, k_max):
    report = verify_dold(betti, k_max)
    assert report.passed, report.counterexample


def test_dold_identities_on_builtins():
    for M in BUILTIN.values():
        report = verify_dold(M.betti, 6)
        assert report.passed, (M.name, report.counterexample)


def test_divided_transfer_identity_and_example():
    assert divided_transfer(S2, 3, 3).matrix == la.identity(len(WeightedBasis(S2, 3)))
    div = divided_transfer(GradedDim([1]), 5, 2)
    assert div.matrix == [[comb(5, 3)]]


@given(small_profile, st.integers(0, 5))
def test_generating_function_matches_coinvariants(betti, k):
    if betti.total > 4:
        return
    assert sym_betti(betti, k) == sym_betti_oracle(betti, k)


@given(small_profile, st.integers(1, 4))
def test_transfer_matches_tensor_oracle(betti, k):
    if betti.total > 4:
        return
    assert transfer_operator(betti, k).matrix == transfer_oracle(betti, k).matrix


@given(small_profile, st.integers(0, 6))
def test_stability_in_degrees_up_to_k(betti, k):
    a, b = sym_betti(betti, k), sym_betti(betti, k + 1)
    assert a[0] == 1
    for q in range(k + 1):
        assert a[q] == b[q]
    t = stabilization_operator(betti, k)
    for q in set(WeightedBasis(betti, k).degrees):
        assert t.rank_in_degree(q) == a[q]
