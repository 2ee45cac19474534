"""Rational homology of symmetric powers.

Over the rationals H_*(Sym_k M) is the S_k-coinvariant part of H_*(M)^{⊗k},
which is the weight-k part of the free graded-commutative algebra on a basis
of H_*(M): even-degree classes are polynomial, odd-degree classes exterior.
The unit class ``u`` (degree 0) plays the role of "one more point", so
stabilization is multiplication by ``u`` and the single-step transfer is the
derivation d/du.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations
from math import comb, factorial
from typing import Sequence

from . import _linalg as la
from .errors import ResourceBoundError
from .graded import GradedDim

ORACLE_MAX_TOTAL_DIM = 6
ORACLE_MAX_K = 6


@dataclass(frozen=True)
class Generator:
    degree: int
    index: int  # position among generators of the same degree

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    def __str__(self) -> str:
        if self.degree == 0 and self.index == 0:
            return "u"
        return f"x{self.degree}_{self.index}"


def generators(betti: GradedDim) -> tuple[Generator, ...]:
    """One generator per basis class, sorted by (degree, input order)."""
    betti = GradedDim(betti)
    if betti[0] < 1:
        raise ValueError("a Betti profile needs b_0 >= 1")
    return tuple(Generator(q, i) for q, b in enumerate(betti) for i in range(b))


def _exponent_vectors(gens: Sequence[Generator], k: int):
    """Exponent vectors of weight k in descending lexicographic order."""
    if not gens:
        if k == 0:
            yield ()
        return
    head, rest = gens[0], gens[1:]
    top = min(k, 1) if head.odd else k
    for e in range(top, -1, -1):
        for tail in _exponent_vectors(rest, k - e):
            yield (e,) + tail


@dataclass(frozen=True)
class WeightedBasis:
    """Weight-k monomials in the generators of a Betti profile."""

    betti: GradedDim
    k: int
    gens: tuple[Generator, ...] = field(init=False)
    monomials: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        betti = GradedDim(self.betti)
        object.__setattr__(self, "betti", betti)
        gens = generators(betti)
        object.__setattr__(self, "gens", gens)
        mons = tuple(_exponent_vectors(gens, self.k)) if self.k >= 0 else ()
        object.__setattr__(self, "monomials", mons)

    def __len__(self) -> int:
        return len(self.monomials)

    def degree(self, mono: tuple[int, ...]) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.gens))

    @property
    def degrees(self) -> list[int]:
        return [self.degree(m) for m in self.monomials]

    @property
    def graded_dims(self) -> GradedDim:
        counts: dict[int, int] = {}
        for q in self.degrees:
            counts[q] = counts.get(q, 0) + 1
        return GradedDim(counts)

    def index(self) -> dict[tuple[int, ...], int]:
        return {m: i for i, m in enumerate(self.monomials)}

    def label(self, mono: tuple[int, ...]) -> str:
        factors = []
        for e, g in zip(mono, self.gens):
            if e == 1:
                factors.append(str(g))
            elif e > 1:
                factors.append(f"{g}^{e}")
        return "*".join(factors) or "1"


def sym_betti(betti: GradedDim, k: int) -> GradedDim:
    """Betti numbers of Sym_k from those of M, by generating function.

    The coefficient of s^k in prod_{i even} (1 - s t^i)^{-b_i} *
    prod_{i odd} (1 + s t^i)^{b_i}, as a polynomial in t.
    """
    betti = GradedDim(betti)
    if betti[0] < 1:
        raise ValueError("a Betti profile needs b_0 >= 1")
    if k < 0:
        return GradedDim()
    # poly[s] = {t: coeff}, truncated at s^k
    poly: list[dict[int, int]] = [{0: 1}] + [{} for _ in range(k)]
    for i, b in enumerate(betti):
        if b == 0:
            continue
        if i % 2 == 0:
            factor = {m: comb(m + b - 1, m) for m in range(k + 1)}
        else:
            factor = {m: comb(b, m) for m in range(min(b, k) + 1)}
        new: list[dict[int, int]] = [{} for _ in range(k + 1)]
        for s1, terms in enumerate(poly):
            for t1, c1 in terms.items():
                for m, c2 in factor.items():
                    s = s1 + m
                    if s > k:
                        break
                    t = t1 + i * m
                    new[s][t] = new[s].get(t, 0) + c1 * c2
        poly = new
    return GradedDim(poly[k])


def _koszul_action(perm: Sequence[int], tensor: Sequence[int], parity: Sequence[int]):
    """Apply ``perm`` (position i goes to perm[i]) to a pure tensor.

    Returns the permuted tensor and the Koszul sign from passing odd factors
    past each other.
    """
    k = len(tensor)
    out = [0] * k
    sign = 1
    for i in range(k):
        out[perm[i]] = tensor[i]
        if parity[tensor[i]]:
            for j in range(i + 1, k):
                if perm[j] < perm[i] and parity[tensor[j]]:
                    sign = -sign
    return tuple(out), sign


def _symmetrize(tensor: tuple[int, ...], parity: Sequence[int]) -> dict[tuple[int, ...], int]:
    """The norm element sum_g g.tensor over all of S_k."""
    acc: dict[tuple[int, ...], int] = {}
    for perm in permutations(range(len(tensor))):
        img, sign = _koszul_action(perm, tensor, parity)
        acc[img] = acc.get(img, 0) + sign
    return {t: c for t, c in acc.items() if c}


def _oracle_guard(betti: GradedDim, k: int):
    if betti.total > ORACLE_MAX_TOTAL_DIM or k > ORACLE_MAX_K:
        raise ResourceBoundError(
            f"brute-force coinvariants need total dim <= {ORACLE_MAX_TOTAL_DIM} and k <= {ORACLE_MAX_K}"
        )


def sym_betti_oracle(betti: GradedDim, k: int) -> GradedDim:
    """Betti numbers of Sym_k by explicit symmetrization of H_*(M)^{⊗k}.

    Over Q the coinvariants are isomorphic to the invariants through the
    norm map, and each orbit of pure tensors contributes one dimension
    exactly when its norm element survives the Koszul signs.
    """
    betti = GradedDim(betti)
    _oracle_guard(betti, k)
    gens = generators(betti)
    parity = [g.degree % 2 for g in gens]
    counts: dict[int, int] = {}
    for rep in combinations_with_replacement(range(len(gens)), k):
        if _symmetrize(rep, parity):
            q = sum(gens[i].degree for i in rep)
            counts[q] = counts.get(q, 0) + 1
    return GradedDim(counts)


@dataclass(frozen=True)
class LinearMap:
    """A degree-preserving map between weighted bases.

    ``matrix[i][j]`` is the coefficient of target monomial i in the image of
    source monomial j.
    """

    source: WeightedBasis
    target: WeightedBasis
    matrix: la.Matrix

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target), len(self.source)

    def block(self, degree: int) -> la.Matrix:
        rows = [i for i, q in enumerate(self.target.degrees) if q == degree]
        cols = [j for j, q in enumerate(self.source.degrees) if q == degree]
        return [[self.matrix[i][j] for j in cols] for i in rows]

    def rank_in_degree(self, degree: int) -> int:
        return la.rank(self.block(degree))

    def to_json(self) -> dict:
        return {
            "source": [self.source.label(m) for m in self.source.monomials],
            "target": [self.target.label(m) for m in self.target.monomials],
            "matrix": [[la.fraction_str(x) for x in row] for row in self.matrix],
        }


def _map_from_rule(source: WeightedBasis, target: WeightedBasis, rule) -> LinearMap:
    """Build a matrix from ``rule(mono) -> [(coeff, image_mono)]``."""
    tindex = target.index()
    mat = la.zeros(len(target), len(source))
    for j, mono in enumerate(source.monomials):
        for coeff, img in rule(mono):
            if coeff:
                mat[tindex[img]][j] += Fraction(coeff)
    return LinearMap(source, target, mat)


def stabilization_operator(betti: GradedDim, k: int) -> LinearMap:
    """Multiplication by the unit class, weight k -> weight k + 1."""
    src, tgt = WeightedBasis(betti, k), WeightedBasis(betti, k + 1)

    def times_u(mono):
        return [(1, (mono[0] + 1,) + mono[1:])]

    return _map_from_rule(src, tgt, times_u)


def transfer_operator(betti: GradedDim, k: int) -> LinearMap:
    """Delete one point in all ways: u^m x -> m u^{m-1} x, weight k -> k - 1."""
    if k < 1:
        raise ValueError("the transfer needs k >= 1")
    src, tgt = WeightedBasis(betti, k), WeightedBasis(betti, k - 1)

    def d_du(mono):
        m = mono[0]
        if m == 0:
            return []
        return [(m, (m - 1,) + mono[1:])]

    return _map_from_rule(src, tgt, d_du)


def divided_transfer(betti: GradedDim, p: int, m: int) -> LinearMap:
    """Deletion of p - m points summed over unordered subsets, weight p -> m.

    ``u^a x -> C(a, p - m) u^{a - p + m} x``; for p = m this is the identity.
    """
    if not 0 <= m <= p:
        raise ValueError("need 0 <= m <= p")
    src, tgt = WeightedBasis(betti, p), WeightedBasis(betti, m)
    drop = p - m

    def rule(mono):
        a = mono[0]
        if a < drop:
            return []
        return [(comb(a, drop), (a - drop,) + mono[1:])]

    return _map_from_rule(src, tgt, rule)


def transfer_oracle(betti: GradedDim, k: int) -> LinearMap:
    """Single-step transfer computed on tensors rather than monomials.

    A weight-k monomial is the coinvariant class of its pure tensor; it is
    carried to an invariant by the norm map, the last tensor factor is
    deleted (only the unit class survives deletion), and the result is read
    back through the weight-(k-1) norm elements.
    """
    betti = GradedDim(betti)
    _oracle_guard(betti, k)
    if k < 1:
        raise ValueError("the transfer needs k >= 1")
    src, tgt = WeightedBasis(betti, k), WeightedBasis(betti, k - 1)
    parity = [g.degree % 2 for g in src.gens]

    def tensor_of(mono):
        return tuple(i for i, e in enumerate(mono) for _ in range(e))

    norms = {}
    for mono in tgt.monomials:
        t = tensor_of(mono)
        norms[t] = (mono, _symmetrize(t, parity))

    def rule(mono):
        deleted: dict[tuple[int, ...], int] = {}
        for term, c in _symmetrize(tensor_of(mono), parity).items():
            if term[-1] == 0:  # unit class in the deleted slot
                deleted[term[:-1]] = deleted.get(term[:-1], 0) + c
        out = []
        for t, (tmono, norm) in norms.items():
            if t in deleted:
                out.append((Fraction(deleted[t], norm[t]), tmono))
        return out

    return _map_from_rule(src, tgt, rule)


@dataclass
class DoldReport:
    betti: GradedDim
    k_max: int
    checks: list[tuple[str, bool]] = field(default_factory=list)
    counterexample: str | None = None

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.checks)

    def record(self, name: str, ok: bool, detail: str = ""):
        self.checks.append((name, ok))
        if not ok and self.counterexample is None:
            self.counterexample = f"{name}: {detail}" if detail else name


@lru_cache(maxsize=None)
def _sigma(betti: GradedDim, p: int) -> LinearMap:
    """sigma_p : B_{p-1} -> B_p (p >= 1)."""
    return stabilization_operator(betti, p - 1)


@lru_cache(maxsize=None)
def _tau(betti: GradedDim, p: int) -> LinearMap:
    return transfer_operator(betti, p)


def verify_dold(betti: GradedDim, k_max: int) -> DoldReport:
    """Check the transfer/stabilization identities for weights up to k_max."""
    betti = GradedDim(betti)
    report = DoldReport(betti, k_max)

    # tau sigma - sigma tau = id on each weight p
    for p in range(0, k_max + 1):
        ts = la.matmul(_tau(betti, p + 1).matrix, _sigma(betti, p + 1).matrix)
        n = len(WeightedBasis(betti, p))
        if p >= 1:
            st = la.matmul(_sigma(betti, p).matrix, _tau(betti, p).matrix)
        else:
            st = la.zeros(n, n)
        ok = la.equal(la.sub(ts, st), la.identity(n))
        report.record(f"commutator weight {p}", ok, "tau*sigma - sigma*tau != id")

    # composite of single steps equals (p - m)! times the divided transfer
    for p in range(1, k_max + 1):
        comp = la.identity(len(WeightedBasis(betti, p)))
        for m in range(p - 1, -1, -1):
            comp = la.matmul(_tau(betti, m + 1).matrix, comp, inner=len(WeightedBasis(betti, m + 1)))
            div = la.scale(divided_transfer(betti, p, m).matrix, factorial(p - m))
            ok = la.equal(comp, div)
            report.record(f"composite {p}->{m}", ok, "single-step composite != (p-m)! tau_{m,p}")

    # tau_{q,p} sigma_p = tau_{q,p-1} + sigma_q tau_{q-1,p-1}
    for p in range(1, k_max + 1):
        for q in range(0, p):
            lhs = la.matmul(divided_transfer(betti, p, q).matrix, _sigma(betti, p).matrix,
                            inner=len(WeightedBasis(betti, p)))
            rhs = divided_transfer(betti, p - 1, q).matrix
            if q >= 1:
                extra = la.matmul(_sigma(betti, q).matrix, divided_transfer(betti, p - 1, q - 1).matrix,
                                  inner=len(WeightedBasis(betti, q - 1)))
                rhs = [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(rhs, extra)]
            report.record(f"recursion p={p} q={q}", la.equal(lhs, rhs), "recursion fails")

    # Dold decomposition B_p = sum_q B_q / im sigma_q, degreewise and as an isomorphism
    for p in range(0, k_max + 1):
        bp = WeightedBasis(betti, p)
        for deg in sorted(set(bp.degrees)):
            quotient_total = 0
            stacked: la.Matrix = []
            for q in range(0, p + 1):
                bq = WeightedBasis(betti, q)
                dim_q = bq.degrees.count(deg)
                im = _sigma(betti, q).rank_in_degree(deg) if q >= 1 else 0
                quotient_total += dim_q - im
                # B_q / im sigma_q has the u-free monomials as a basis
                tau_qp = divided_transfer(betti, p, q)
                rows = [i for i, mono in enumerate(bq.monomials) if mono[0] == 0 and bq.degree(mono) == deg]
                cols = [j for j, qq in enumerate(bp.degrees) if qq == deg]
                stacked.extend([[tau_qp.matrix[i][j] for j in cols] for i in rows])
            dim_p = bp.degrees.count(deg)
            report.record(f"Dold dimension p={p} deg={deg}", dim_p == quotient_total,
                          f"dim {dim_p} vs sum of quotients {quotient_total}")
            iso = len(stacked) == dim_p and la.rank(stacked) == dim_p
            report.record(f"Dold isomorphism p={p} deg={deg}", iso, "projected transfers not invertible")
    return report
