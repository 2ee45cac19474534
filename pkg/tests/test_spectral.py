import warnings

import pytest

from symstrat import confighomology as ch
from symstrat import spectral as sp
from symstrat.errors import UnsupportedModelError
from symstrat.graded import GradedDim
from symstrat.manifolds import BUILTIN, euclidean
from symstrat.partitions import Partition

P = Partition.parse

# hand-worked: S_{2,1} contributes H^3_c, H^4_c in column 0, S_3 = R^2 contributes H^2_c shifted to column 1
WORKED_PAGE = {(0, 3): 1, (0, 4): 1, (1, 1): 1}


def config_betti(n, d):
    mod = ch.ordered_config_module(d, n)
    return ch.colored_coinvariants(mod, Partition((n,)))


def test_worked_page():
    page = sp.build_e1(P("2"), 1, 2)
    assert page.entries == WORKED_PAGE
    assert page.r == 1
    qs, ps, grid = page.matrix()
    assert ps == [0, 1]
    assert qs == [4, 3, 2, 1]
    assert grid == [[1, 0], [1, 0], [0, 0], [0, 1]]


def test_diagonal_pages():
    assert sp.build_e1(P("2"), 0, 2).entries == {(0, 2): 1}
    assert sp.build_e1(P("2"), 0, 3, mode="plain").entries == {(0, 3): 1}
    # the twisted groups of odd d vanish on strata with a repeated point
    assert sp.build_e1(P("2"), 2, 3).entries == {}


def test_degenerate_page_warns():
    with pytest.warns(UserWarning):
        page = sp.build_e1(P("1"), 2, 2)
    assert page.degenerate


def test_json_shape():
    doc = sp.build_e1(P("2"), 1, 2).to_json()
    assert doc["mode"] == "plain"
    assert [(e["p"], e["q"], e["dim"]) for e in doc["entries"]] == [(0, 3, 1), (0, 4, 1), (1, 1, 1)]


def test_support_bounds_on_worked_page():
    page = sp.build_e1(P("2"), 1, 2)
    assert sp.column_support_bound(page, 0) == 6
    assert sp.column_support_bound(page, 1) == 3
    report = sp.check_supports_and_vanishing(page)
    assert report.checks[0].ok and report.checks[1].ok


def test_pages_need_euclidean_space():
    with pytest.raises(UnsupportedModelError):
        sp.check_supports_and_vanishing(sp.build_e1(P("2"), 0, 2), M=BUILTIN["S2"])


@pytest.mark.parametrize("j", range(0, 3))
def test_lambda_two_in_four_dimensions(j):
    page = sp.build_e1(P("2"), j, 4)
    report = sp.check_supports_and_vanishing(page, sharp=True)
    assert report.passed, report.failures


def test_lambda_two_three_ones_in_four_dimensions():
    # 2,2,1 has no ones left, so the j - p count of ones overestimates column 2
    report = sp.check_supports_and_vanishing(sp.build_e1(P("2"), 3, 4), sharp=True)
    failed = {c.name for c in report.failures}
    assert failed == {
        "per-column range (d>2), p < j",
        "per-column range (star_a), p < j",
        "relative page vanishes for p+q > 11 (star_a)",
    }
    cmp = sp.stab_compare(P("2"), 3, 4)
    assert cmp.failures == [(1, 12)]


def test_thresholds():
    th = sp.VanishingThresholds(4, 1, 2, "d>2")
    assert th.total_threshold() == 4 * 4 - 2
    assert th.total(0, 14) and not th.total(0, 13)
    assert th.iso(0, 15) and not th.iso(0, 14)
    sa = sp.VanishingThresholds(4, 1, 2, "star_a", 2)
    assert sa.total_threshold() == 16 - 6
    assert not sa.total(0, 10) and sa.total(0, 11)
    assert [t.case for t in sp.thresholds_for(euclidean(4), 1, 2)] == ["d>2", "star_a"]
    assert [t.case for t in sp.thresholds_for(euclidean(2), 1, 2)] == ["d=2"]


def test_sparsity():
    assert sp.is_sparse(sp.build_e1(P("2"), 0, 2))
    # (1,1) can hit (0,3) under d_1
    assert not sp.is_sparse(sp.build_e1(P("2"), 1, 2))


def test_sym_compact_support():
    assert sp.sym_compact_support(0, 3, "plain") == GradedDim([1])
    assert sp.sym_compact_support(3, 2, "plain") == GradedDim({6: 1})
    assert sp.sym_compact_support(1, 3, "plain") == GradedDim({3: 1})
    assert sp.sym_compact_support(2, 3, "plain") == GradedDim()
    assert sp.sym_compact_support(2, 3, "twisted") == GradedDim({6: 1})


def test_les_exact_case():
    w = sp.les_w_bounds(P("2"), 0, 2)
    assert w.sparse
    assert w.exact == GradedDim({3: 1, 4: 1})
    assert w.betti == GradedDim([1, 1]) == config_betti(2, 2)


def test_les_bounds():
    w = sp.les_w_bounds(P("2"), 1, 2)
    assert not w.sparse and w.exact is None
    assert w.upper_bounds == GradedDim({3: 1, 4: 1, 5: 1, 6: 1})
    assert w.betti_upper == GradedDim([1, 1, 1, 1])
    assert w.euler_w == 0
    truth = config_betti(3, 2)
    assert all(w.betti_upper[q] >= truth[q] for q in range(4))


def test_les_twisted_odd():
    w = sp.les_w_bounds(P("2"), 2, 3)
    assert w.betti == GradedDim([1]) == config_betti(4, 3)


def test_les_degenerate():
    w = sp.les_w_bounds(P("1"), 1, 2)
    assert w.degenerate and w.betti == GradedDim()


@pytest.mark.parametrize("lam, j, d", [(P("2"), j, d) for j in range(3) for d in (2, 3, 4)] + [(P("3"), 1, 2), (P("2,2"), 0, 4)])
def test_euler_consistency(lam, j, d):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for mode in ("plain", "twisted") if d % 2 else ("plain",):
            assert sp.euler_consistency(sp.build_e1(lam, j, d, mode))


def test_stab_compare_plane():
    cmp = sp.stab_compare(P("2"), 0, 2)
    assert cmp.passed
    assert cmp.shifted == {(0, 4): 1}
    assert cmp.target == WORKED_PAGE
    # the p = 0 columns differ below the range, which is only informational
    assert cmp.first_mismatch_outside is not None
    assert cmp.to_json()["iso_thresholds"] == {"d=2": 4 * 1 - 0 + 1}


def test_stab_compare_index_bijection():
    cmp = sp.stab_compare(P("2"), 1, 2)
    assert cmp.index_bijective == {0: True, 1: False, 2: False}
