"""Rational (co)homology of configuration spaces of R^d with S_n action.

H^*(F(R^d, n); Q) is generated by classes A_{ij} of degree d - 1 subject to

    A_{ij} = (-1)^d A_{ji},   A_{ij}^2 = 0,
    A_{ij} A_{jk} + A_{jk} A_{ki} + A_{ki} A_{ij} = 0,

and the monomials A_{i_1 j_1} ... A_{i_s j_s} with distinct upper indices
i_1 < ... < i_s (and j_t < i_t) form a basis.  Products are brought into that
basis by repeatedly rewriting a pair with the same upper index:

    A_{ij} A_{ik} = A_{kj} A_{ik} - A_{kj} A_{ij}     (j < k < i).

Colored configuration spaces, and so the strata of Sym_k(R^d), have
homology equal to coinvariants of this module under Young or wreath
subgroups, possibly twisted by a sign character.  Coinvariant dimensions
are the ranks of the averaging projectors, read off as their traces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, permutations, product
from math import factorial
from typing import Iterator, Sequence

from . import _linalg as la
from .errors import ResourceBoundError
from .graded import GradedDim
from .partitions import Partition, SetPartition, canonical_set_partition

DEFAULT_MAX_N = 8

Monomial = tuple[tuple[int, int], ...]

# Coefficients of A_{kj}A_{ik} and A_{kj}A_{ij} in the rewrite of A_{ij}A_{ik}.
ARNOLD_REWRITE = (1, -1)


def _normalize(factors: Sequence[tuple[int, int]], d: int) -> tuple[int, Monomial | None]:
    """Orient each factor as (upper, lower) and sort, tracking signs.

    Returns (sign, monomial), with monomial ``None`` when a factor repeats.
    """
    sign = 1
    oriented = []
    for a, b in factors:
        if a == b:
            raise ValueError(f"A_{{{a}{b}}} is not a generator")
        if a < b:
            a, b = b, a
            if d % 2:
                sign = -sign
        oriented.append((a, b))
    if len(set(oriented)) < len(oriented):
        return 0, None
    if d % 2 == 0:
        # odd-degree generators: sign of the sorting permutation
        inv = 0
        for x in range(len(oriented)):
            for y in range(x + 1, len(oriented)):
                if oriented[x] > oriented[y]:
                    inv += 1
        if inv % 2:
            sign = -sign
    return sign, tuple(sorted(oriented))


@lru_cache(maxsize=None)
def _straighten(mono: Monomial, d: int, rewrite: tuple[int, int]) -> tuple[tuple[Monomial, int], ...]:
    for t in range(len(mono) - 1):
        (i, j), (i2, k) = mono[t], mono[t + 1]
        if i == i2:
            break
    else:
        return ((mono, 1),)
    acc: dict[Monomial, int] = {}
    for coeff, pair in zip(rewrite, (((k, j), (i, k)), ((k, j), (i, j)))):
        if not coeff:
            continue
        sign, norm = _normalize(mono[:t] + pair + mono[t + 2:], d)
        if norm is None:
            continue
        for m, c in _straighten(norm, d, rewrite):
            acc[m] = acc.get(m, 0) + coeff * sign * c
    return tuple((m, c) for m, c in sorted(acc.items()) if c)


def straighten(factors: Sequence[tuple[int, int]], d: int) -> dict[Monomial, int]:
    """Express a product of generators in the admissible basis."""
    sign, norm = _normalize(factors, d)
    if norm is None:
        return {}
    return {m: sign * c for m, c in _straighten(norm, d, ARNOLD_REWRITE)}


def admissible_basis(n: int) -> list[Monomial]:
    """Monomials with distinct upper indices, sorted by (degree, factors)."""
    choices = [[None] + list(range(1, i)) for i in range(2, n + 1)]
    basis = []
    for pick in product(*choices):
        basis.append(tuple((i, j) for i, j in zip(range(2, n + 1), pick) if j is not None))
    basis.sort(key=lambda m: (len(m), m))
    return basis


def poincare_product(n: int, d: int) -> GradedDim:
    """prod_{i=1}^{n-1} (1 + i t^{d-1}) expanded."""
    coeffs = [1]
    for i in range(1, n):
        nxt = coeffs + [0]
        for s in range(len(coeffs)):
            nxt[s + 1] += i * coeffs[s]
        coeffs = nxt
    out: dict[int, int] = {}
    for s, c in enumerate(coeffs):
        out[s * (d - 1)] = out.get(s * (d - 1), 0) + c
    return GradedDim(out)


SparseMatrix = list[dict[int, int]]  # column j -> {row: coeff}


@dataclass
class SymGroupModule:
    n: int
    d: int
    basis: list[Monomial]
    index: dict[Monomial, int] = field(repr=False)

    @property
    def graded_dims(self) -> GradedDim:
        counts: dict[int, int] = {}
        for m in self.basis:
            q = len(m) * (self.d - 1)
            counts[q] = counts.get(q, 0) + 1
        return GradedDim(counts)

    def degree(self, mono: Monomial) -> int:
        return len(mono) * (self.d - 1)

    def act(self, perm: Sequence[int], mono: Monomial) -> dict[Monomial, int]:
        """Image of a basis monomial under the point relabelling x -> perm[x-1]."""
        return straighten([(perm[i - 1], perm[j - 1]) for i, j in mono], self.d)

    def action_matrix(self, perm: Sequence[int]) -> SparseMatrix:
        cols = []
        for mono in self.basis:
            cols.append({self.index[m]: c for m, c in self.act(perm, mono).items()})
        return cols

    @cached_property
    def action(self) -> list[SparseMatrix]:
        """Matrices of the adjacent transpositions s_1, ..., s_{n-1}."""
        mats = []
        for a in range(1, self.n):
            perm = list(range(1, self.n + 1))
            perm[a - 1], perm[a] = perm[a], perm[a - 1]
            mats.append(self.action_matrix(perm))
        return mats

    def trace_by_degree(self, perm: Sequence[int]) -> tuple[int, ...]:
        """Trace of the permutation on each homogeneous piece (indexed by word length)."""
        # the signs in the rewriting depend only on the parity of d
        return _trace(self.n, 2 + self.d % 2, _cycle_type(perm))


def ordered_config_module(d: int, n: int, max_n: int = DEFAULT_MAX_N) -> SymGroupModule:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > max_n:
        raise ResourceBoundError(f"configuration module with n={n} exceeds the bound {max_n}")
    if d < 2:
        raise ValueError("d must be at least 2")
    basis = admissible_basis(n)
    return SymGroupModule(n, d, basis, {m: i for i, m in enumerate(basis)})


def _cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    n = len(perm)
    seen = [False] * n
    lengths = []
    for s in range(n):
        if not seen[s]:
            length, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = perm[x] - 1
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def _cycle_rep(ctype: tuple[int, ...]) -> tuple[int, ...]:
    perm, start = [], 1
    for length in ctype:
        block = list(range(start, start + length))
        perm.extend(block[1:] + block[:1])
        start += length
    return tuple(perm)


@lru_cache(maxsize=None)
def _trace(n: int, d: int, ctype: tuple[int, ...]) -> tuple[int, ...]:
    """Graded trace of a permutation of cycle type ``ctype`` (traces are class functions)."""
    perm = _cycle_rep(ctype)
    traces = [0] * n
    for mono in admissible_basis(n):
        image = straighten([(perm[i - 1], perm[j - 1]) for i, j in mono], d)
        c = image.get(mono)
        if c:
            traces[len(mono)] += c
    return tuple(traces)


def clear_caches():
    """Forget memoized straightenings and traces (after changing ARNOLD_REWRITE)."""
    _straighten.cache_clear()
    _trace.cache_clear()


def perm_sign(perm: Sequence[int]) -> int:
    ctype = _cycle_type(perm)
    return -1 if sum(l - 1 for l in ctype) % 2 else 1


@dataclass(frozen=True)
class TwistCharacter:
    """Character twisting a coinvariant computation.

    ``trivial``; ``sign`` (the sign of the permutation of the points);
    ``eta`` (the partial sign of a set-partition stabilizer).
    """

    kind: str = "trivial"
    set_partition: SetPartition | None = None

    def __post_init__(self):
        if self.kind not in ("trivial", "sign", "eta"):
            raise ValueError(f"unknown twist {self.kind!r}")
        if self.kind == "eta" and self.set_partition is None:
            raise ValueError("the eta twist needs a set partition")

    @classmethod
    def eta(cls, lam_set: SetPartition) -> "TwistCharacter":
        return cls("eta", lam_set)


TRIVIAL = TwistCharacter("trivial")
SIGN = TwistCharacter("sign")


def _young_elements(colors: Partition) -> Iterator[tuple[int, ...]]:
    """Permutations of 1..n preserving consecutive color ranges."""
    ranges, start = [], 1
    for c in colors.parts:
        ranges.append(list(range(start, start + c)))
        start += c
    for pieces in product(*(permutations(r) for r in ranges)):
        yield tuple(x for piece in pieces for x in piece)


@lru_cache(maxsize=None)
def _signed_sum(l: int) -> int:
    return sum(perm_sign([x + 1 for x in p]) for p in permutations(range(l)))


def _eta_elements(lam_set: SetPartition) -> Iterator[tuple[tuple[int, ...], int]]:
    """(image in S_m, summed eta-value) over the stabilizer of ``lam_set``.

    The stabilizer is (permutations of equal-size blocks) x (permutations
    inside each block).  Inner permutations fix every point of the ordered
    stratum, so each block permutation is yielded once together with the
    sum of eta over its coset.
    """
    ordered = lam_set.ordered_blocks()
    m = len(ordered)
    by_size: dict[int, list[int]] = {}
    for pos, block in enumerate(ordered):
        by_size.setdefault(len(block), []).append(pos)
    sizes = sorted(by_size, reverse=True)
    for choice in product(*(permutations(by_size[s]) for s in sizes)):
        image = [0] * m
        block_sign = 1
        elem_sign = 1
        for s, positions, perm in zip(sizes, (by_size[s] for s in sizes), choice):
            for src, dst in zip(positions, perm):
                image[src] = dst + 1
            if s >= 2:
                ps = perm_sign([positions.index(x) + 1 for x in perm])
                block_sign *= ps
                # moving blocks of size s rigidly permutes s * (#blocks) elements
                elem_sign *= ps ** s
        inner = 1
        for s in sizes:
            if s >= 2:
                inner *= _signed_sum(s) ** len(by_size[s])
        yield tuple(image), block_sign * elem_sign * inner


def _group_order_eta(lam_set: SetPartition) -> int:
    order = 1
    for l, n in lam_set.shape.multiplicities.items():
        order *= factorial(l) ** n * factorial(n)
    return order


def colored_coinvariants(mod: SymGroupModule, colors: Partition, twist: TwistCharacter = TRIVIAL) -> GradedDim:
    """Degreewise dimension of twisted coinvariants under a color-preserving group.

    For ``trivial``/``sign`` twists the group is the Young subgroup of the
    colors; for ``eta`` it is the stabilizer of the set partition acting on
    its ordered blocks, whose size grouping must match ``colors``.
    """
    if colors.k != mod.n:
        raise ValueError(f"colors {colors} do not partition n={mod.n}")
    sums = [Fraction(0)] * mod.n
    if twist.kind == "eta":
        lam_set = twist.set_partition
        if len(lam_set.blocks) != mod.n:
            raise ValueError("eta twist: number of blocks must equal the number of points")
        if Partition(lam_set.shape.multiplicities.values()) != colors:
            raise ValueError("eta twist: colors must group the blocks by size")
        order = _group_order_eta(lam_set)
        for image, weight in _eta_elements(lam_set):
            if weight:
                tr = mod.trace_by_degree(image)
                for s in range(mod.n):
                    sums[s] += weight * tr[s]
    else:
        order = 1
        for c in colors.parts:
            order *= factorial(c)
        for g in _young_elements(colors):
            chi = perm_sign(g) if twist.kind == "sign" else 1
            tr = mod.trace_by_degree(g)
            for s in range(mod.n):
                sums[s] += chi * tr[s]
    dims = {}
    for s, total in enumerate(sums):
        value = total / order
        if value.denominator != 1 or value < 0:
            raise ArithmeticError(f"projector trace {value} in word length {s} is not a dimension")
        if value:
            dims[s * (mod.d - 1)] = int(value)
    return GradedDim(dims)


def projector_rank(mod: SymGroupModule, colors: Partition, twist: TwistCharacter = TRIVIAL) -> GradedDim:
    """Coinvariant dimensions by explicit rank of the averaging projector.

    Builds sum_g chi(g) rho(g) as a matrix and row-reduces it; meant as an
    independent check on small modules.
    """
    n = len(mod.basis)
    total: list[dict[int, Fraction]] = [dict() for _ in range(n)]
    if twist.kind == "eta":
        elements = list(_eta_elements(twist.set_partition))
    else:
        elements = [(g, perm_sign(g) if twist.kind == "sign" else 1) for g in _young_elements(colors)]
    for g, chi in elements:
        if not chi:
            continue
        for j, col in enumerate(mod.action_matrix(g)):
            for i, c in col.items():
                total[j][i] = total[j].get(i, 0) + chi * c
    dims = {}
    for s in range(mod.n):
        idx = [j for j, m in enumerate(mod.basis) if len(m) == s]
        cols = [{i: total[j].get(i, 0) for i in idx if total[j].get(i, 0)} for j in idx]
        r = la.rank_sparse(cols)
        if r:
            dims[s * (mod.d - 1)] = r
    return GradedDim(dims)


def apply(mat: SparseMatrix, vec: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for j, c in vec.items():
        for i, x in mat[j].items():
            out[i] = out.get(i, 0) + c * x
    return {i: x for i, x in out.items() if x}


def check_relations(mod: SymGroupModule) -> list[str]:
    """Involution, braid and far-commutation relations of the action matrices."""
    problems = []
    mats = mod.action
    size = len(mod.basis)
    for a, s in enumerate(mats, start=1):
        for j in range(size):
            if any(len(mod.basis[i]) != len(mod.basis[j]) for i in s[j]):
                problems.append(f"s_{a} does not preserve degree on basis vector {j}")
                break
            if apply(s, s[j]) != {j: 1}:
                problems.append(f"s_{a}^2 != 1 on basis vector {j}")
                break
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            for j in range(size):
                e = {j: 1}
                if b == a + 1:
                    lhs = apply(mats[a], apply(mats[b], apply(mats[a], e)))
                    rhs = apply(mats[b], apply(mats[a], apply(mats[b], e)))
                    rel = "braid"
                else:
                    lhs = apply(mats[a], apply(mats[b], e))
                    rhs = apply(mats[b], apply(mats[a], e))
                    rel = "commutation"
                if lhs != rhs:
                    problems.append(f"{rel} relation fails for s_{a + 1}, s_{b + 1} on basis vector {j}")
                    break
    return problems


def presentation_check(n: int, d: int) -> list[str]:
    """Check the straightening against the presentation it claims to realize.

    In each word length: the Arnold ideal has the expected codimension in the
    free algebra (so the admissible count is right), and every ideal element
    straightens to zero (so straightening is the quotient map).
    """
    problems = []
    gens = [(i, j) for i in range(2, n + 1) for j in range(1, i)]
    triples = list(combinations(range(1, n + 1), 3))
    expected = poincare_product(n, d)
    for s in range(0, n):
        free = list(combinations(gens, s))
        ideal = []
        if s >= 2:
            for a, b, c in triples:
                terms = [((a, b), (b, c)), ((b, c), (c, a)), ((c, a), (a, b))]
                for rest in combinations(gens, s - 2):
                    vec: dict[Monomial, int] = {}
                    zero_check: dict[Monomial, int] = {}
                    for term in terms:
                        sign, norm = _normalize(term + rest, d)
                        if norm is None:
                            continue
                        vec[norm] = vec.get(norm, 0) + sign
                        for m, cc in straighten(norm, d).items():
                            zero_check[m] = zero_check.get(m, 0) + sign * cc
                    vec = {m: c for m, c in vec.items() if c}
                    if vec:
                        ideal.append(vec)
                    if any(zero_check.values()):
                        problems.append(
                            f"n={n} d={d}: relation ({a},{b},{c}) times {rest} straightens to a non-zero element"
                        )
                        return problems
        quotient = len(free) - la.rank_sparse(ideal)
        want = expected[s * (d - 1)]
        if quotient != want:
            problems.append(f"n={n} d={d}: word length {s} quotient has dim {quotient}, expected {want}")
    return problems


def stratum_points(lam: Partition) -> tuple[int, Partition]:
    """Number of distinct points of the stratum and their color grouping."""
    return lam.r, Partition(lam.multiplicities.values())


def _default_mode(d: int, mode: str | None) -> str:
    if mode is None:
        return "twisted" if d % 2 else "plain"
    if mode not in ("plain", "twisted"):
        raise ValueError(f"mode must be 'plain' or 'twisted', got {mode!r}")
    return mode


def stratum_homology(lam: Partition, d: int, mode: str | None = None, max_n: int = DEFAULT_MAX_N) -> GradedDim:
    """Rational homology of the stratum S_lam(R^d).

    ``plain`` is the ordinary homology of the colored configuration space.
    ``twisted`` (the default for odd d) is the eta-twisted coinvariant group
    taken over the stabilizer of the canonical set partition of shape lam.
    For even d both modes agree.
    """
    mode = _default_mode(d, mode)
    m, colors = stratum_points(lam)
    if m == 0:
        return GradedDim([1])
    mod = ordered_config_module(d, m, max_n)
    if mode == "twisted" and d % 2:
        return colored_coinvariants(mod, colors, TwistCharacter.eta(canonical_set_partition(lam)))
    return colored_coinvariants(mod, colors, TRIVIAL)


def stratum_compact_support(lam: Partition, d: int, mode: str | None = None, max_n: int = DEFAULT_MAX_N) -> GradedDim:
    """Compactly supported cohomology of S_lam(R^d), graded by q.

    The stratum has dimension d*m for m distinct points.  For even d it is an
    oriented manifold and H^q_c = H_{dm-q}.  For odd d, ``twisted`` regrades
    the eta-twisted groups the same way, while ``plain`` twists the
    coinvariants by the orientation character (the sign of the point
    permutation) before regrading.
    """
    mode = _default_mode(d, mode)
    m, colors = stratum_points(lam)
    top = d * m
    if d % 2 and mode == "plain" and m > 0:
        mod = ordered_config_module(d, m, max_n)
        return colored_coinvariants(mod, colors, SIGN).regrade(top)
    return stratum_homology(lam, d, mode, max_n).regrade(top)
