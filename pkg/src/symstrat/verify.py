"""Registry of named invariants, grouped by module, and the batch runner.

Each invariant runs a finite grid and reports the first counterexample.
Invariants marked ``refuted`` encode plausible statements that fail on the
grid; they are still executed, and they count as expected only while their
counterexample persists.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import confighomology as ch
from . import euler as eu
from . import manifolds as mf
from . import partitions as pt
from . import ranges as rg
from . import spectral as sp
from . import sympower as sy
from .errors import ResourceBoundError
from .graded import GradedDim

MODULES = ("partitions", "manifolds", "sympower", "confighomology", "euler", "spectral", "ranges", "cli")


@dataclass
class Outcome:
    ok: bool
    counterexample: str | None = None
    skipped: int = 0
    checked: int = 0
    crashed: bool = False


@dataclass(frozen=True)
class Invariant:
    name: str
    module: str
    runner: Callable[[], Outcome] = field(compare=False)
    refuted: bool = False


REGISTRY: list[Invariant] = []


def invariant(module: str, name: str, refuted: bool = False):
    def deco(fn):
        REGISTRY.append(Invariant(name, module, fn, refuted))
        return fn

    return deco


class _Search:
    """Collects the first counterexample of a grid run, counting guarded skips."""

    def __init__(self):
        self.bad: str | None = None
        self.skipped = 0
        self.checked = 0

    def check(self, ok: bool, what) -> bool:
        self.checked += 1
        if not ok and self.bad is None:
            self.bad = what() if callable(what) else str(what)
        return ok

    def done(self) -> bool:
        return self.bad is not None

    def outcome(self) -> Outcome:
        return Outcome(self.bad is None, self.bad, self.skipped, self.checked)


# -- partitions -------------------------------------------------------------


def _lams(k_max: int, k_min: int = 0):
    for k in range(k_min, k_max + 1):
        yield from pt.partitions_of(k)


@invariant("partitions", "depth levels partition the collapse set")
def _depths():
    s = _Search()
    for lam in _lams(8):
        levels = pt.collapses_by_depth(lam)
        sizes = sum(len(v) for v in levels.values())
        s.check(sizes == len(pt.all_collapses(lam)), f"{lam!r}: level sizes {sizes}")
        s.check(levels[0] == [lam], f"{lam!r}: depth 0 is {levels[0]}")
        s.check(all(not pt.col(lam, p) for p in range(max(lam.r, 1), lam.r + 3)), f"{lam!r}: collapses at depth >= r")
    return s.outcome()


@invariant("partitions", "ones after collapse: ones >= j - p", refuted=True)
def _ones_stated():
    s = _Search()
    for lam, j in product(_lams(6, 1), range(7)):
        big = pt.add_ones(lam, j)
        for p in range(big.r):
            for mu in pt.col(big, p):
                s.check(mu.ones >= j - p, f"lambda={lam}, j={j}, p={p}: {mu} has {mu.ones} ones")
    return s.outcome()


@invariant("partitions", "ones after collapse: ones >= j - 2p")
def _ones_sharp():
    s = _Search()
    for lam, j in product(_lams(6, 1), range(7)):
        big = pt.add_ones(lam, j)
        for p in range(big.r):
            for mu in pt.col(big, p):
                s.check(mu.ones >= lam.ones + j - 2 * p, f"lambda={lam}, j={j}, p={p}: {mu}")
    return s.outcome()


@invariant("partitions", "adding a one is a bijection of depth-p collapses for j > p", refuted=True)
def _bij_stated():
    s = _Search()
    for lam, j in product(_lams(6, 1), range(1, 7)):
        for p in range(j):
            res = pt.stab_collapse_check(lam, j, p)
            s.check(res.bijective, lambda: f"lambda={lam}, j={j}, p={p}: unhit {[str(u) for u in res.unhit]}")
    return s.outcome()


@invariant("partitions", "adding a one is a bijection of depth-p collapses for j >= 2p, injective always")
def _bij_sharp():
    s = _Search()
    for lam, j in product(_lams(6, 1), range(0, 7)):
        for p in range(0, j + 6):
            res = pt.stab_collapse_check(lam, j, p)
            s.check(res.injective, f"lambda={lam}, j={j}, p={p}: not injective")
            if j >= 2 * p:
                s.check(res.bijective, f"lambda={lam}, j={j}, p={p}: not bijective")
    return s.outcome()


@invariant("partitions", "ordered set partition counts match the closed form")
def _setpart_counts():
    s = _Search()
    for lam in _lams(9, 1):
        got = len(pt.ord_set_partitions(lam))
        s.check(got == pt._count_set_partitions(lam), f"{lam!r}: {got}")
    return s.outcome()


@invariant("partitions", "is_collapse_of agrees with the collapse poset")
def _collapse_agree():
    s = _Search()
    for k in range(8):
        parts = list(pt.partitions_of(k))
        for lam in parts:
            cols = pt.all_collapses(lam)
            for mu in parts:
                s.check(pt.is_collapse_of(lam, mu) == (mu in cols), f"({lam!r}, {mu!r})")
    return s.outcome()


# -- manifolds --------------------------------------------------------------


@invariant("manifolds", "condition_a is monotone under zeroing low Betti numbers")
def _conda_monotone():
    s = _Search()
    for d in range(2, 7):
        for betti in product(range(2), repeat=d):
            b = GradedDim((1,) + betti)
            M = mf.ManifoldModel("grid", d, True, True, b, 0)
            base = mf.condition_a(M).a
            for t in range(1, d + 1):
                if b[t]:
                    zeroed = dict(b.as_dict())
                    zeroed[t] = 0
                    N = mf.ManifoldModel("grid", d, True, True, GradedDim(zeroed), 0)
                    after = mf.condition_a(N).a
                    rank = -1 if base is None else base
                    s.check((-1 if after is None else after) >= rank, f"d={d} betti={b}: {base} -> {after}")
    return s.outcome()


@invariant("manifolds", "puncturing is additive")
def _puncture_add():
    s = _Search()
    for d, r, t in product(range(2, 7), range(0, 4), range(0, 4)):
        R = mf.euclidean(d)
        s.check(mf.puncture(mf.puncture(R, r), t) == mf.puncture(R, r + t), f"d={d}, r={r}, s={t}")
    return s.outcome()


@invariant("manifolds", "punctures keep condition_a, truncated below d-1")
def _puncture_conda():
    s = _Search()
    for d, r in product(range(3, 7), range(1, 6)):
        expected = min(mf.condition_a(mf.euclidean(d)).a, d - 2)
        s.check(mf.condition_a(mf.puncture(mf.euclidean(d), r)).a == expected, f"d={d}, r={r}")
    return s.outcome()


@invariant("manifolds", "built-in models validate")
def _builtin_valid():
    s = _Search()
    for name, M in mf.BUILTIN.items():
        problems = mf.validate(M)
        s.check(not problems, f"{name}: {problems}")
    return s.outcome()


# -- sympower ---------------------------------------------------------------


def _profiles(total_max: int, deg_max: int = 3):
    for length in range(1, deg_max + 2):
        for tail in product(range(total_max), repeat=length - 1):
            b = (1,) + tail
            if sum(b) <= total_max and (length == 1 or b[-1]):
                yield GradedDim(b)


@invariant("sympower", "degree-0 Betti number of Sym_k is 1")
def _sym_deg0():
    s = _Search()
    for b, k in product(_profiles(5), range(8)):
        s.check(sy.sym_betti(b, k)[0] == 1, f"{b}, k={k}")
    return s.outcome()


@invariant("sympower", "generating function agrees with brute-force coinvariants")
def _sym_oracle():
    s = _Search()
    for b, k in product(_profiles(4), range(6)):
        s.check(sy.sym_betti(b, k) == sy.sym_betti_oracle(b, k), f"{b}, k={k}")
    return s.outcome()


@invariant("sympower", "Betti numbers of Sym_k stabilize in the classical and improved ranges")
def _steenrod():
    s = _Search()
    for b, k in product(_profiles(5, 4), range(8)):
        lo, hi = sy.sym_betti(b, k), sy.sym_betti(b, k + 1)
        s.check(all(lo[i] == hi[i] for i in range(k + 1)), f"{b}, k={k}")
        a = 0
        while a + 1 < len(b) and b[a + 1] == 0:
            a += 1
        if a >= 1:
            s.check(all(lo[i] == hi[i] for i in range((a + 1) * k + 1)), f"{b}, k={k}, a={a}")
    return s.outcome()


@invariant("sympower", "stabilization is injective, and onto where dimensions agree")
def _stab_injective():
    s = _Search()
    for b, k in product(_profiles(4), range(6)):
        op = sy.stabilization_operator(b, k)
        src, dst = op.source.graded_dims, op.target.graded_dims
        for q in range(max(len(src), len(dst))):
            rk = op.rank_in_degree(q)
            s.check(rk == src[q], f"{b}, k={k}, degree {q}: rank {rk} < {src[q]}")
            s.check((rk == dst[q]) == (src[q] == dst[q]), f"{b}, k={k}, degree {q}")
    return s.outcome()


@invariant("sympower", "transfer and stabilization identities on built-in profiles")
def _dold():
    s = _Search()
    seen = set()
    for M in mf.BUILTIN.values():
        if M.betti in seen:
            continue
        seen.add(M.betti)
        rep = sy.verify_dold(M.betti, 6)
        s.check(rep.passed, lambda: f"{M.name}: {rep.counterexample}")
    return s.outcome()


# -- confighomology ---------------------------------------------------------


@invariant("confighomology", "total dimension n! with the expected Poincare polynomial")
def _config_dims():
    s = _Search()
    for n in range(1, 6):
        for d in (2, 3):
            problems = ch.presentation_check(n, d)
            s.check(not problems, lambda: problems[0])
            if s.done():
                return s.outcome()
    for n, d in product(range(1, 8), range(2, 6)):
        g = ch.ordered_config_module(d, n).graded_dims
        s.check(g.total == _factorial(n) and g == ch.poincare_product(n, d), f"n={n}, d={d}: {g}")
    return s.outcome()


def _factorial(n: int) -> int:
    out = 1
    for t in range(2, n + 1):
        out *= t
    return out


@invariant("confighomology", "action matrices satisfy involution, braid and commutation relations")
def _config_relations():
    s = _Search()
    for n, d in product(range(2, 8), (2, 3)):
        problems = ch.check_relations(ch.ordered_config_module(d, n))
        s.check(not problems, lambda: f"n={n}, d={d}: {problems[0]}")
    return s.outcome()


@invariant("confighomology", "coinvariants are bounded by the ordered module")
def _coinv_bound():
    s = _Search()
    for n, d in product(range(1, 7), (2, 3)):
        mod = ch.ordered_config_module(d, n)
        for colors in pt.partitions_of(n):
            for tw in (ch.TRIVIAL, ch.SIGN):
                g = ch.colored_coinvariants(mod, colors, tw)
                s.check(all(g[q] <= mod.graded_dims[q] for q in range(len(g))), f"n={n}, d={d}, {colors}, {tw.kind}")
    return s.outcome()


@invariant("confighomology", "stratum homology stabilizes in degrees up to the number of ones")
def _stratum_stab():
    s = _Search()
    for lam, j, d in product(_lams(4, 1), range(5), (2, 3, 4)):
        src, dst = pt.add_ones(lam, j), pt.add_ones(lam, j + 1)
        i = src.ones
        modes = ("plain", "twisted") if d % 2 else ("plain",)
        for mode in modes:
            try:
                a = ch.stratum_homology(src, d, mode)
                b = ch.stratum_homology(dst, d, mode)
            except ResourceBoundError:
                s.skipped += 1
                continue
            top = i if d > 2 else i - 1
            s.check(all(a[q] == b[q] for q in range(top + 1)), f"{src!r} -> {dst!r}, d={d}, {mode}")
    return s.outcome()


@invariant("confighomology", "stratum homology ignores the order of parts")
def _stratum_canon():
    s = _Search()
    for lam, d in product(_lams(5, 1), (2, 3)):
        flipped = pt.Partition.parse(",".join(map(str, reversed(lam.parts))))
        for mode in ("plain", "twisted"):
            s.check(ch.stratum_homology(lam, d, mode) == ch.stratum_homology(flipped, d, mode), f"{lam!r}, d={d}")
    return s.outcome()


@invariant("confighomology", "eta-twisted dimensions do not depend on the chosen set partition")
def _eta_orbit():
    s = _Search()
    for lam in _lams(5, 2):
        mod = ch.ordered_config_module(3, lam.r)
        colors = pt.Partition(lam.multiplicities.values())
        values = {ch.colored_coinvariants(mod, colors, ch.TwistCharacter.eta(L)) for L in pt.ord_set_partitions(lam)}
        s.check(len(values) == 1, f"{lam!r}: {values}")
    return s.outcome()


# -- euler ------------------------------------------------------------------


@invariant("euler", "strata sum to chi_c of the symmetric power")
def _partition_sum():
    s = _Search()
    for chi, k in product(range(-6, 7), range(11)):
        for twisted in (False, True):
            total = sum(eu.chi_c_stratum(mu, chi, twisted) for mu in pt.partitions_of(k))
            s.check(total == eu.chi_c_sym(chi, k, twisted), f"chi={chi}, k={k}, twisted={twisted}")
    return s.outcome()


@invariant("euler", "E1 Euler characteristic equals chi_c of the discriminant")
def _e1_euler():
    s = _Search()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for lam, j, d in product(_lams(4, 1), range(4), (2, 3, 4)):
            for mode in ("plain", "twisted") if d % 2 else ("plain",):
                try:
                    page = sp.build_e1(lam, j, d, mode)
                except ResourceBoundError:
                    s.skipped += 1
                    continue
                s.check(sp.euler_consistency(page), f"{lam!r}, j={j}, d={d}, {mode}")
    return s.outcome()


@invariant("euler", "stratum chi_c values are integers")
def _chi_integral():
    s = _Search()
    for lam, chi in product(_lams(10, 1), range(-6, 7)):
        try:
            eu.chi_c_stratum(lam, chi)
            s.check(True, "")
        except ArithmeticError as exc:
            s.check(False, str(exc))
    return s.outcome()


# -- spectral ---------------------------------------------------------------


def _spectral_grid(j_max: int = 4, d_values=(2, 3, 4)):
    for lam, j, d in product(_lams(4, 1), range(j_max + 1), d_values):
        if not lam.is_all_ones:
            yield lam, j, d


def _pages(s: _Search, j_max: int = 4, d_values=(2, 3, 4)):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for lam, j, d in _spectral_grid(j_max, d_values):
            try:
                yield lam, j, d, sp.build_e1(lam, j, d)
            except ResourceBoundError:
                s.skipped += 1


@invariant("spectral", "E1 vanishes for p < 0 and p > r + j; columns obey the support bound")
def _supports():
    s = _Search()
    for lam, j, d, page in _pages(s):
        bad = [pq for pq in page.nonzero if not (0 <= pq[0] <= page.r + page.j)]
        bad += [pq for pq in page.nonzero if not (-pq[0] <= pq[1] <= sp.column_support_bound(page, pq[0]))]
        s.check(not bad, f"{lam!r}, j={j}, d={d}: {bad}")
    return s.outcome()


def _vanishing(select: Callable[[sp.CheckRecord], bool], sharp: bool = False) -> Outcome:
    s = _Search()
    for lam, j, d, page in _pages(s):
        try:
            rep = sp.check_supports_and_vanishing(page, sharp=sharp)
        except ResourceBoundError:
            s.skipped += 1
            continue
        for c in rep.checks:
            if select(c):
                s.check(c.ok, f"{lam!r}, j={j}, d={d}: {c.name}: {c.detail}")
    return s.outcome()


@invariant("spectral", "relative page vanishes in the aggregate ranges for d > 2 and d = 2")
def _vanish_total():
    return _vanishing(lambda c: c.name.startswith("relative page") and "star_a" not in c.name)


@invariant("spectral", "relative page vanishes in the aggregate range under condition (*)_a", refuted=True)
def _vanish_star():
    return _vanishing(lambda c: c.name.startswith("relative page") and "star_a" in c.name)


@invariant("spectral", "per-column ranges with ones >= j - p", refuted=True)
def _vanish_column_stated():
    return _vanishing(lambda c: c.name.startswith("per-column"))


@invariant("spectral", "per-column ranges with the actual minimum number of ones")
def _vanish_column_sharp():
    return _vanishing(lambda c: c.name.startswith("sharp"), sharp=True)


def _stab(cases: set[str]) -> Outcome:
    s = _Search()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for lam, j, d in _spectral_grid():
            try:
                cmp = sp.stab_compare(lam, j, d)
            except ResourceBoundError:
                s.skipped += 1
                continue
            bad = [pq for pq in cmp.failures if any(t.iso(*pq) for t in cmp.thresholds if t.case in cases)]
            s.check(not bad, f"{lam!r}, j={j}, d={d}: mismatch at {bad}")
    return s.outcome()


@invariant("spectral", "stabilized pages agree above the isomorphism threshold (d > 2, d = 2)")
def _stab_main():
    return _stab({"d>2", "d=2"})


@invariant("spectral", "stabilized pages agree above the improved threshold under (*)_a", refuted=True)
def _stab_star():
    return _stab({"star_a"})


@invariant("spectral", "Euler characteristic of the page matches the ledger")
def _spectral_euler():
    s = _Search()
    for lam, j, d, page in _pages(s, 3):
        s.check(sp.euler_consistency(page), f"{lam!r}, j={j}, d={d}")
    return s.outcome()


@invariant("spectral", "exact complements match configuration space homology")
def _les_exact():
    s = _Search()
    for j, d in product(range(0, 5), (2, 3, 4)):
        try:
            w = sp.les_w_bounds(pt.Partition([2]), j, d)
            mod = ch.ordered_config_module(d, j + 2)
        except ResourceBoundError:
            s.skipped += 1
            continue
        truth = ch.colored_coinvariants(mod, pt.Partition([j + 2]))
        if w.exact is not None:
            s.check(w.betti == truth, f"j={j}, d={d}: {w.betti} != {truth}")
        s.check(all(w.betti_upper[q] >= truth[q] for q in range(len(truth))), f"j={j}, d={d}: bound below truth")
        s.check(w.euler_w == truth.euler() * (-1) ** (d * (j + 2)), f"j={j}, d={d}: Euler")
    return s.outcome()


# -- ranges -----------------------------------------------------------------


def _range_models():
    for d in range(2, 7):
        yield mf.ManifoldModel(f"h1-{d}", d, True, True, GradedDim([1, 1]), 0)
        yield mf.euclidean(d)
        if d > 2:
            yield mf.puncture(mf.euclidean(d), 2)


@invariant("ranges", "range formulas dominate j - 1 when k > r and j >= 2")
def _dominance():
    s = _Search()
    for M in _range_models():
        for k in range(1, 9):
            for lam in pt.partitions_of(k):
                if lam.r >= k:
                    continue
                for j in range(2, 13):
                    f = rg.f_or(M, lam, j).bound
                    s.check(f >= rg.simplified_range(M, j).bound, f"{M.name}, {lam!r}, j={j}: {f}")
    return s.outcome()


@invariant("ranges", "range formulas are non-decreasing in j")
def _monotone():
    s = _Search()
    nonor = [mf.ManifoldModel(f"nor-{d}", d, False, True, GradedDim([1, 1]), 0) for d in range(2, 7)]
    for M in list(_range_models()) + nonor:
        fn = rg.f_or if M.orientable else rg.f_nor
        for lam in _lams(8, 1):
            vals = [fn(M, lam, j).bound for j in range(13)]
            s.check(all(x <= y for x, y in zip(vals, vals[1:])), f"{M.name}, {lam!r}: {vals}")
    return s.outcome()


@invariant("ranges", "range functions return exact integers")
def _exact_ints():
    s = _Search()
    for M in _range_models():
        for lam, j in product(_lams(6, 1), range(13)):
            s.check(type(rg.f_or(M, lam, j).bound) is int, f"{M.name}, {lam!r}, j={j}")
    for args in product(range(0, 4), range(0, 6), range(1, 4), range(1, 4)):
        for case in ("i", "ii", "iii"):
            s.check(type(rg.stratum_column_range(*args, case, a=1).bound) is int, str(args))
    return s.outcome()


@invariant("ranges", "case selection ignores the size of nonzero Betti numbers")
def _case_scaling():
    s = _Search()
    for M in _range_models():
        for factor in (2, 3, 7):
            scaled = mf.ManifoldModel(M.name, M.d, True, True, GradedDim([1] + [factor * b for b in M.betti.dims[1:]]), 0)
            for lam, j in product(_lams(5, 1), range(6)):
                s.check(rg.f_or(M, lam, j).case == rg.f_or(scaled, lam, j).case, f"{M.name} x{factor}")
    return s.outcome()


# -- cli --------------------------------------------------------------------


@invariant("cli", "emitted output round-trips through its schema")
def _roundtrip():
    from . import cli

    s = _Search()
    for argv in cli.SAMPLE_INVOCATIONS:
        for fmt in ("json", "csv"):
            text = cli.render(argv + ["--format", fmt])
            s.check(cli.reprint(text, fmt) == text, f"{' '.join(argv)} --format {fmt}")
    return s.outcome()


@invariant("cli", "every module has registered invariants")
def _registry_complete():
    s = _Search()
    for m in MODULES:
        s.check(any(inv.module == m for inv in REGISTRY), f"no invariant for {m}")
    return s.outcome()


# -- runner -----------------------------------------------------------------


@dataclass
class VerifyLine:
    invariant: Invariant
    outcome: Outcome

    @property
    def status(self) -> str:
        if self.outcome.crashed:
            return "FAIL"
        if self.invariant.refuted:
            return "REFUTED" if not self.outcome.ok else "UNEXPECTED-PASS"
        return "PASS" if self.outcome.ok else "FAIL"

    @property
    def expected(self) -> bool:
        return self.status in ("PASS", "REFUTED")


@dataclass
class VerifyReport:
    suite: str
    lines: list[VerifyLine]

    @property
    def passed(self) -> bool:
        return all(line.expected for line in self.lines)

    @property
    def first_failure(self) -> VerifyLine | None:
        return next((line for line in self.lines if not line.expected), None)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "invariants": [
                {
                    "module": line.invariant.module,
                    "name": line.invariant.name,
                    "status": line.status,
                    "checked": line.outcome.checked,
                    "skipped": line.outcome.skipped,
                    "counterexample": line.outcome.counterexample,
                }
                for line in self.lines
            ],
        }


def run_verify(suite: str = "all", stop_on_failure: bool = False) -> VerifyReport:
    if suite != "all" and suite not in MODULES:
        raise ValueError(f"unknown suite {suite!r}; choose all or one of {', '.join(MODULES)}")
    lines = []
    for inv in REGISTRY:
        if suite != "all" and inv.module != suite:
            continue
        try:
            outcome = inv.runner()
        except ResourceBoundError:
            outcome = Outcome(True, None, skipped=1)
        except (ArithmeticError, ValueError) as exc:
            outcome = Outcome(False, f"raised {type(exc).__name__}: {exc}", crashed=True)
        lines.append(VerifyLine(inv, outcome))
        if stop_on_failure and not lines[-1].expected:
            break
    return VerifyReport(suite, lines)
