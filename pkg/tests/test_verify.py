import pytest

from symstrat import cli
from symstrat import confighomology as ch
from symstrat import verify

# every invariant listed for a module, in short form; each needs a registered runner
CHECKLIST = {
    "partitions": [
        "depth levels partition the collapse set",
        "ones after collapse: ones >= j - p",
        "adding a one is a bijection of depth-p collapses for j > p",
        "ordered set partition counts match the closed form",
    ],
    "manifolds": [
        "condition_a is monotone under zeroing low Betti numbers",
        "puncturing is additive",
        "punctures keep condition_a, truncated below d-1",
    ],
    "sympower": [
        "degree-0 Betti number of Sym_k is 1",
        "generating function agrees with brute-force coinvariants",
        "Betti numbers of Sym_k stabilize in the classical and improved ranges",
        "stabilization is injective, and onto where dimensions agree",
        "transfer and stabilization identities on built-in profiles",
    ],
    "confighomology": [
        "total dimension n! with the expected Poincare polynomial",
        "action matrices satisfy involution, braid and commutation relations",
        "coinvariants are bounded by the ordered module",
        "stratum homology stabilizes in degrees up to the number of ones",
        "stratum homology ignores the order of parts",
        "eta-twisted dimensions do not depend on the chosen set partition",
    ],
    "euler": [
        "strata sum to chi_c of the symmetric power",
        "E1 Euler characteristic equals chi_c of the discriminant",
        "stratum chi_c values are integers",
    ],
    "spectral": [
        "E1 vanishes for p < 0 and p > r + j; columns obey the support bound",
        "relative page vanishes in the aggregate ranges for d > 2 and d = 2",
        "relative page vanishes in the aggregate range under condition (*)_a",
        "Euler characteristic of the page matches the ledger",
        "stabilized pages agree above the isomorphism threshold (d > 2, d = 2)",
        "exact complements match configuration space homology",
    ],
    "ranges": [
        "range formulas dominate j - 1 when k > r and j >= 2",
        "range formulas are non-decreasing in j",
        "range functions return exact integers",
        "case selection ignores the size of nonzero Betti numbers",
    ],
    "cli": [
        "emitted output round-trips through its schema",
        "every module has registered invariants",
    ],
}


def test_checklist_is_registered():
    registered = {(inv.module, inv.name) for inv in verify.REGISTRY}
    for module, names in CHECKLIST.items():
        for name in names:
            assert (module, name) in registered, (module, name)
    assert set(CHECKLIST) == set(verify.MODULES)
    assert all(callable(inv.runner) for inv in verify.REGISTRY)
    assert len(registered) == len(verify.REGISTRY)


@pytest.mark.parametrize("suite", ["partitions", "manifolds", "euler", "ranges", "cli"])
def test_quick_suites_pass(suite):
    report = verify.run_verify(suite)
    assert report.passed, report.first_failure
    assert report.lines and all(line.invariant.module == suite for line in report.lines)


def test_refuted_statements_keep_counterexamples():
    report = verify.run_verify("partitions")
    refuted = [line for line in report.lines if line.invariant.refuted]
    assert refuted and all(line.status == "REFUTED" and line.outcome.counterexample for line in refuted)


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run_verify("everything")


def test_resource_guard_counts_as_skipped(monkeypatch):
    def guarded():
        raise ch.ResourceBoundError("too big")

    inv = verify.Invariant("guarded", "cli", guarded)
    monkeypatch.setattr(verify, "REGISTRY", [inv])
    report = verify.run_verify("cli")
    assert report.passed
    assert report.lines[0].outcome.skipped == 1


@pytest.fixture
def corrupted_straightening(monkeypatch):
    monkeypatch.setattr(ch, "ARNOLD_REWRITE", (1, 1))
    ch.clear_caches()
    yield
    monkeypatch.undo()
    ch.clear_caches()


def test_corrupted_relation_is_caught_first(corrupted_straightening):
    report = verify.run_verify("all", stop_on_failure=True)
    assert not report.passed
    first = report.first_failure
    assert first.invariant.module == "confighomology"
    assert first.invariant.name == "total dimension n! with the expected Poincare polynomial"
    code, out, _ = cli.run(["verify", "--suite", "confighomology"])
    assert code == 1
    assert "first failure: confighomology: total dimension n!" in out
