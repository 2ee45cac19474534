"""E^1 pages of the open-filtration spectral sequence for discriminants in Sym(R^d).

The discriminant D_{1^j lam}(R^d) is filtered by the number of merges: the
p-th layer is the union of the strata S_{lam'} with lam' a depth-p collapse
of 1^j lam, so

    E^1_{p,q} = sum_{lam' in col_p(1^j lam)} dim H^{p+q}_c(S_{lam'}(R^d)).

The differential d_r has bidegree (-r, r+1) and raises the compactly
supported degree p+q by one.  Differentials are never computed; only
positional consequences (sparsity, Euler characteristics, stable ranges) are
drawn from the page.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .confighomology import DEFAULT_MAX_N, stratum_compact_support
from .errors import UnsupportedModelError
from .euler import EulerLedger, euler_ledger
from .graded import GradedDim
from .manifolds import ManifoldModel, condition_a, euclidean
from .partitions import Partition, add_ones, col, stab_collapse_check


def _mode(d: int, mode: str | None) -> str:
    if mode is None:
        return "twisted" if d % 2 else "plain"
    if mode not in ("plain", "twisted"):
        raise ValueError(f"mode must be 'plain' or 'twisted', got {mode!r}")
    return mode if d % 2 else "plain"


@dataclass
class E1Page:
    lam: Partition
    j: int
    d: int
    mode: str
    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    columns: dict[int, list[tuple[Partition, GradedDim]]] = field(default_factory=dict)

    def __getitem__(self, pq: tuple[int, int]) -> int:
        return self.entries.get(pq, 0)

    @property
    def r(self) -> int:
        return self.lam.r

    @property
    def degenerate(self) -> bool:
        return self.lam.is_all_ones

    @property
    def nonzero(self) -> list[tuple[int, int]]:
        return sorted(pq for pq, v in self.entries.items() if v)

    @property
    def total_degree_range(self) -> tuple[int, int] | None:
        tot = [p + q for p, q in self.nonzero]
        return (min(tot), max(tot)) if tot else None

    def total_dims(self) -> GradedDim:
        """Column sums by total degree p + q (an upper bound for H^*_c(D))."""
        out: dict[int, int] = {}
        for (p, q), v in self.entries.items():
            out[p + q] = out.get(p + q, 0) + v
        return GradedDim(out)

    def euler(self) -> int:
        return sum((-1) ** (p + q) * v for (p, q), v in self.entries.items())

    def shifted(self, s: int) -> dict[tuple[int, int], int]:
        """Entries of the page for R^s x D: compact-support degree grows by s."""
        return {(p, q + s): v for (p, q), v in self.entries.items()}

    def q_range(self) -> tuple[int, int]:
        qs = [q for _, q in self.nonzero]
        return (min(qs), max(qs)) if qs else (0, -1)

    def matrix(self) -> tuple[list[int], list[int], list[list[int]]]:
        """Rows q descending, columns p ascending."""
        ps = sorted(self.columns)
        lo, hi = self.q_range()
        qs = list(range(hi, lo - 1, -1))
        return qs, ps, [[self[(p, q)] for p in ps] for q in qs]

    def to_json(self) -> dict:
        return {
            "lambda": str(self.lam),
            "j": self.j,
            "d": self.d,
            "mode": self.mode,
            "entries": [{"p": p, "q": q, "dim": self[(p, q)]} for p, q in self.nonzero],
            "columns": {
                str(p): [
                    {"partition": str(mu), "compact_support": {str(q): v for q, v in g.as_dict().items()}}
                    for mu, g in self.columns[p]
                ]
                for p in sorted(self.columns)
            },
            "total_degree_range": self.total_degree_range,
        }


def build_e1(lam: Partition, j: int, d: int, mode: str | None = None, max_n: int = DEFAULT_MAX_N) -> E1Page:
    """E^1 page for D_{1^j lam}(R^d).

    Odd d defaults to the sign-twisted groups that compute the homology of
    the complement; ``mode="plain"`` gives the genuine compactly supported
    cohomology of the strata instead.
    """
    mode = _mode(d, mode)
    if lam.is_all_ones:
        warnings.warn(f"lambda = {lam} is all ones: D is the whole symmetric power", stacklevel=2)
    page = E1Page(lam, j, d, mode)
    big = add_ones(lam, j)
    for p in range(big.r):
        contributions = []
        for mu in col(big, p):
            g = stratum_compact_support(mu, d, mode, max_n)
            contributions.append((mu, g))
            for n, v in g.as_dict().items():
                page.entries[(p, n - p)] = page.entries.get((p, n - p), 0) + v
        page.columns[p] = contributions
    page.entries = {pq: v for pq, v in sorted(page.entries.items()) if v}
    return page


@dataclass
class CheckRecord:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SupportReport:
    checks: list[CheckRecord] = field(default_factory=list)
    info: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CheckRecord]:
        return [c for c in self.checks if not c.ok]


def column_support_bound(page: E1Page, p: int, shifted: bool = True) -> int:
    """Largest q allowed in column p; ``shifted`` refers to the R^d x D page."""
    extra = 1 if shifted else 0
    return page.d * (page.r + page.j - p + extra) - p


@dataclass(frozen=True)
class VanishingThresholds:
    """Where an entry of the shifted j page must equal the j+1 page.

    ``column(p, q)`` is the per-column summand range for p < j and
    ``total(p, q)`` the aggregate range in p + q.
    """

    d: int
    r: int
    j: int
    case: str
    a: int | None = None

    def column(self, p: int, q: int, ones: int | None = None) -> bool:
        """Per-summand isomorphism range in column p, given a lower bound on ones.

        ``ones`` defaults to j - p, which can exceed the true minimum number
        of ones in column p; the guaranteed count is ones(lam) + j - 2p.
        """
        d, r, j = self.d, self.r, self.j
        i = j - p if ones is None else ones
        base = d * (j + r - p + 1)
        if self.case == "star_a":
            return q > base - (self.a + 1) * i - p
        if self.case == "d=2":
            return q > base - i - p
        return q >= base - i - p

    def column_stated(self, p: int, q: int) -> bool:
        """Per-summand range with (a+1)(j+p) in place of (a+1)(j-p), written in p + q."""
        d, r, j = self.d, self.r, self.j
        return p + q > d * (j + r - p + 1) - (self.a + 1) * (j + p)

    def total_threshold(self) -> int:
        d, r, j = self.d, self.r, self.j
        if self.case == "star_a":
            return d * (r + j + 1) - (self.a + 1) * j
        return d * (r + j + 1) - j

    def total(self, p: int, q: int) -> bool:
        t = self.total_threshold()
        return p + q >= t if self.case == "d>2" else p + q > t

    def iso(self, p: int, q: int) -> bool:
        """The isomorphism range for the abutment, one above the relative vanishing."""
        t = self.total_threshold() + 1
        return p + q >= t if self.case == "d>2" else p + q > t


def thresholds_for(M: ManifoldModel, r: int, j: int) -> list[VanishingThresholds]:
    cases = [VanishingThresholds(M.d, r, j, "d>2" if M.d > 2 else "d=2")]
    a = condition_a(M).a
    if a is not None and a >= 1:
        cases.append(VanishingThresholds(M.d, r, j, "star_a", a))
    return cases


def _compare(shift_j: dict, page_j1: E1Page) -> set[tuple[int, int]]:
    keys = set(shift_j) | set(page_j1.entries)
    return {pq for pq in keys if shift_j.get(pq, 0) != page_j1[pq]}


def check_supports_and_vanishing(
    page: E1Page, M: ManifoldModel | None = None, max_n: int = DEFAULT_MAX_N, sharp: bool = False
) -> SupportReport:
    """Column supports of ``page`` and the vanishing ranges of the relative page.

    The relative page compares R^d x D_{1^j lam} with D_{1^{j+1} lam}; where
    it vanishes the two E^1 pages have equal entries, which is what is checked.
    ``sharp`` adds per-column checks that use the columns where t is actually
    a bijection of index sets and the actual minimum number of ones there.
    """
    M = M or euclidean(page.d)
    if not M.euclidean_like or M.punctures:
        raise UnsupportedModelError("pages are built for R^d only")
    report = SupportReport()
    bad = [(p, q) for p, q in page.nonzero if p < 0 or p > page.r + page.j]
    report.checks.append(CheckRecord("columns vanish outside 0 <= p <= r+j", not bad, f"offending {bad}" if bad else ""))
    bad = [(p, q) for p, q in page.nonzero if not (-p <= q <= column_support_bound(page, p))]
    report.checks.append(CheckRecord("column support -p <= q <= d(r+j-p+1)-p", not bad, f"offending {bad}" if bad else ""))

    nxt = build_e1(page.lam, page.j + 1, page.d, page.mode, max_n)
    shifted = page.shifted(page.d)
    diff = _compare(shifted, nxt)
    keys = set(shifted) | set(nxt.entries)
    big = add_ones(page.lam, page.j)
    sharp_columns = {}
    for p in range(big.r):
        if stab_collapse_check(page.lam, page.j, p).bijective:
            sharp_columns[p] = min(mu.ones for mu in col(big, p))
    for th in thresholds_for(M, page.r, page.j):
        bad = sorted(pq for pq in diff if pq[0] < page.j and th.column(*pq))
        report.checks.append(CheckRecord(f"per-column range ({th.case}), p < j", not bad, f"mismatch at {bad}" if bad else ""))
        bad = sorted(pq for pq in diff if th.total(*pq))
        report.checks.append(
            CheckRecord(
                f"relative page vanishes for p+q {'>=' if th.case == 'd>2' else '>'} {th.total_threshold()} ({th.case})",
                not bad,
                f"mismatch at {bad}" if bad else "",
            )
        )
        if sharp:
            bad = sorted(pq for pq in diff if pq[0] in sharp_columns and th.column(*pq, ones=sharp_columns[pq[0]]))
            report.checks.append(
                CheckRecord(f"sharp per-column range ({th.case})", not bad, f"mismatch at {bad}" if bad else "")
            )
        if th.case == "star_a":
            wider = sorted(pq for pq in keys if pq[0] < page.j and th.column_stated(*pq) and not th.column(*pq))
            broken = [pq for pq in wider if pq in diff]
            report.info.append(
                f"(a+1)(j+p) form covers {len(wider)} further entries with p < j; {len(broken)} of them differ"
                + (f": {broken}" if broken else "")
            )
    return report


def euler_consistency(page: E1Page, ledger: EulerLedger | None = None) -> bool:
    """Alternating sum of the page equals chi_c(D) from the stratum ledger."""
    if ledger is None:
        chi = (-1) ** page.d
        ledger = euler_ledger(page.lam, page.j, chi, twisted=page.mode == "twisted")
    return page.euler() == ledger.chi_D


def is_sparse(page: E1Page) -> bool:
    """No nonzero entry can hit another under any d_r of bidegree (-r, r+1)."""
    nz = set(page.nonzero)
    for p, q in nz:
        for r in range(1, p + 1):
            if (p - r, q + r + 1) in nz:
                return False
    return True


def sym_compact_support(N: int, d: int, mode: str) -> GradedDim:
    """H^*_c(Sym_N(R^d)) in the requested mode."""
    if N == 0:
        return GradedDim([1])
    if d % 2 and mode == "plain" and N > 1:
        # the top class of R^{dN} is anti-invariant under a swap of points
        return GradedDim()
    return GradedDim({d * N: 1})


@dataclass
class WBounds:
    lam: Partition
    j: int
    d: int
    mode: str
    sparse: bool
    exact: GradedDim | None
    upper_bounds: GradedDim
    euler_w: int
    betti: GradedDim | None
    betti_upper: GradedDim | None
    degenerate: bool = False

    def to_json(self) -> dict:
        def g(x):
            return None if x is None else x.as_dict()

        return {
            "lambda": str(self.lam),
            "j": self.j,
            "d": self.d,
            "mode": self.mode,
            "sparse": self.sparse,
            "exact": g(self.exact),
            "upper_bounds": g(self.upper_bounds),
            "euler_w": self.euler_w,
            "betti": g(self.betti),
            "betti_upper": g(self.betti_upper),
            "degenerate": self.degenerate,
        }


def les_w_bounds(lam: Partition, j: int, d: int, mode: str | None = None, max_n: int = DEFAULT_MAX_N) -> WBounds:
    """H^*_c(W_{1^j lam}(R^d)) from the long exact sequence D -> Sym <- W.

    H^n_c(W) = H^{n-1}_c(D) for n < N = d(k+j) and H^N_c(W) = H^{N-1}_c(D) +
    H^N_c(Sym), because the open dense W carries the top class of Sym.  When
    the page is sparse H^*_c(D) is its column sum and the answer is exact;
    otherwise the column sums only bound it.  Betti numbers follow by
    Poincare duality whenever the groups compute ordinary homology (even d,
    or the twisted mode for odd d).
    """
    mode = _mode(d, mode)
    big = add_ones(lam, j)
    N = d * big.k
    sym = sym_compact_support(big.k, d, mode)
    ledger = euler_ledger(lam, j, (-1) ** d, twisted=mode == "twisted")
    if lam.is_all_ones:
        zero = GradedDim()
        return WBounds(lam, j, d, mode, True, zero, zero, 0, zero, zero, True)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        page = build_e1(lam, j, d, mode, max_n)
    dcs = page.total_dims()
    h_w = GradedDim({n + 1: v for n, v in dcs.as_dict().items()}) + sym
    sparse = is_sparse(page)
    euler_w = ledger.chi_W
    if h_w.euler() != euler_w and sparse:
        raise ArithmeticError("exact H^*_c(W) disagrees with the Euler ledger")
    duality = d % 2 == 0 or mode == "twisted"
    betti = h_w.regrade(N) if duality else None
    return WBounds(
        lam,
        j,
        d,
        mode,
        sparse,
        h_w if sparse else None,
        h_w,
        euler_w,
        betti if sparse else None,
        betti,
    )


@dataclass
class StabComparison:
    lam: Partition
    j: int
    d: int
    mode: str
    thresholds: list[VanishingThresholds]
    shifted: dict[tuple[int, int], int]
    target: dict[tuple[int, int], int]
    failures: list[tuple[int, int]]
    informational: list[tuple[int, int]]
    index_bijective: dict[int, bool]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def first_mismatch_outside(self) -> tuple[int, int] | None:
        return self.informational[0] if self.informational else None

    def to_json(self) -> dict:
        return {
            "lambda": str(self.lam),
            "j": self.j,
            "d": self.d,
            "mode": self.mode,
            "passed": self.passed,
            "iso_thresholds": {t.case: t.total_threshold() + 1 for t in self.thresholds},
            "failures": [list(pq) for pq in self.failures],
            "informational": [list(pq) for pq in self.informational],
            "column_index_bijective": {str(p): b for p, b in self.index_bijective.items()},
        }


def stab_compare(lam: Partition, j: int, d: int, mode: str | None = None, M: ManifoldModel | None = None, max_n: int = DEFAULT_MAX_N) -> StabComparison:
    """Compare the R^d-shifted page for j with the page for j+1.

    Equality is asserted where the stabilization map is an isomorphism on
    the abutment; mismatches elsewhere are reported for information.
    """
    mode = _mode(d, mode)
    M = M or euclidean(d)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        src = build_e1(lam, j, d, mode, max_n)
        dst = build_e1(lam, j + 1, d, mode, max_n)
    shifted = src.shifted(d)
    diff = sorted(_compare(shifted, dst))
    ths = thresholds_for(M, lam.r, j)
    failures = [pq for pq in diff if any(t.iso(*pq) for t in ths)]
    informational = [pq for pq in diff if pq not in failures]
    index = {p: stab_collapse_check(lam, j, p).bijective for p in range(add_ones(lam, j + 1).r)}
    return StabComparison(lam, j, d, mode, ths, shifted, dst.entries, failures, informational, index)
