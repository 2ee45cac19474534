"""Exact linear algebra over the rationals.

Dense matrices are lists of rows of ``Fraction``/``int``.  Sparse columns are
``dict`` maps from row key to coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

Matrix = list[list[Fraction]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], inner: int | None = None) -> Matrix:
    """Product of an r x m and an m x c matrix.

    ``inner`` gives m explicitly when a has no rows (shape cannot be read off).
    """
    if inner is None:
        inner = len(a[0]) if a else len(b)
    if len(b) != inner:
        raise ValueError(f"shape mismatch: inner {inner} vs {len(b)} rows")
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        acc = out[i]
        for t, x in enumerate(row):
            if x:
                brow = b[t]
                for c in range(cols):
                    y = brow[c]
                    if y:
                        acc[c] += x * y
    return out


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, s) -> Matrix:
    return [[s * x for x in row] for row in a]


def equal(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    if len(a) != len(b):
        return False
    return all(list(ra) == list(rb) for ra, rb in zip(a, b))


def rank(rows: Iterable[Sequence]) -> int:
    """Rank of a dense matrix by fraction-exact Gaussian elimination."""
    return rank_sparse({i: x for i, x in enumerate(row) if x} for row in rows)


def rank_sparse(vectors: Iterable[Mapping[Hashable, object]]) -> int:
    """Rank of the span of sparse vectors.

    Each vector is reduced against the pivots found so far; a non-zero
    remainder becomes a new pivot.  Integer inputs stay exact through
    ``Fraction``.
    """
    pivots: dict[Hashable, dict] = {}
    order: dict[Hashable, int] = {}
    for vec in vectors:
        v = {key: Fraction(c) for key, c in vec.items() if c}
        while v:
            lead = _leading(v, order)
            piv = pivots.get(lead)
            if piv is None:
                c = v[lead]
                pivots[lead] = {key: x / c for key, x in v.items()}
                break
            c = v[lead]
            for key, x in piv.items():
                y = v.get(key, 0) - c * x
                if y:
                    v[key] = y
                else:
                    v.pop(key, None)
    return len(pivots)


def _leading(v: dict, order: dict) -> Hashable:
    # Stable pivot choice: first-seen key order, so results do not depend on hashing.
    best = None
    best_rank = None
    for key in v:
        r = order.get(key)
        if r is None:
            r = order[key] = len(order)
        if best_rank is None or r < best_rank:
            best, best_rank = key, r
    return best


def fraction_str(x) -> str:
    """Render a rational as ``"p/q"`` (``"p/1"`` for integers)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)
