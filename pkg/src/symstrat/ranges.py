"""Closed-form homological stability ranges as exact integer functions.

Every function returns a RangeResult.  ``direction`` says how to read the
bound: ``"le"`` means an isomorphism in degrees * <= bound, ``"ge"`` one in
degrees * >= bound (compactly supported statements).  Halves are floored.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import OrientationError
from .manifolds import ManifoldModel, condition_a
from .partitions import Partition

CASE_LABELS = (
    "d>2-H1≠0",
    "d=2-H1≠0",
    "star_a",
    "nonorientable-d>2",
    "nonorientable-d=2",
    "simplified",
    "integral-surface",
    "bounded-sym",
    "stratum-ones",
    "stratum-column",
    "sym-compact",
)

UNCOVERED = "case not explicitly covered by the orientable range formula"
DEGENERATE = "lambda is all ones: W is empty"


@dataclass(frozen=True)
class RangeResult:
    bound: int
    case: str
    inputs: dict = field(default_factory=dict, hash=False)
    warnings: tuple[str, ...] = ()
    direction: str = "le"

    def to_json(self) -> dict:
        return {
            "bound": self.bound,
            "case": self.case,
            "inputs": self.inputs,
            "warnings": list(self.warnings),
            "direction": self.direction,
        }


def _check_d(d: int):
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")


def f_or(M: ManifoldModel, lam: Partition, j: int) -> RangeResult:
    """Stability range for W_{1^j lam}(M), M orientable."""
    if not M.orientable:
        raise OrientationError(f"{M.name} is not orientable; use f_nor")
    _check_d(M.d)
    if j < 0:
        raise ValueError("j must be non-negative")
    d, k, r = M.d, lam.k, lam.r
    notes = [DEGENERATE] if lam.is_all_ones else []
    inputs = {"d": d, "k": k, "r": r, "j": j}
    if M.h1_nonzero:
        if d > 2:
            return RangeResult(min(k + j, d * (k - r) + j - 1) - 1, "d>2-H1≠0", inputs, tuple(notes))
        return RangeResult(min(k + j, 2 * (k - r) + j - 2) - 1, "d=2-H1≠0", inputs, tuple(notes))
    a = condition_a(M).a
    if a >= 1:
        inputs["a"] = a
        bound = min((a + 1) * (k + j), d * (k - r) + (a + 1) * j - 2) - 1
        return RangeResult(bound, "star_a", inputs, tuple(notes))
    # only d = 2 gets here: a < d - 1 forces a = 0
    notes.insert(0, UNCOVERED)
    return RangeResult(min(k + j, 2 * (k - r) + j - 2) - 1, "d=2-H1≠0", inputs, tuple(notes))


def f_nor(M: ManifoldModel, lam: Partition, j: int) -> RangeResult:
    """Stability range for W_{1^j lam}(M), M non-orientable."""
    if M.orientable:
        raise OrientationError(f"{M.name} is orientable; use f_or")
    _check_d(M.d)
    if j < 0:
        raise ValueError("j must be non-negative")
    d, k, r = M.d, lam.k, lam.r
    notes = (DEGENERATE,) if lam.is_all_ones else ()
    inputs = {"d": d, "k": k, "r": r, "j": j}
    if d > 2:
        return RangeResult(min(k + j, d * (k - r) + j - 1) - 1, "nonorientable-d>2", inputs, notes)
    return RangeResult(min(k + j, 2 * (k - r) + j // 2 - 1) - 1, "nonorientable-d=2", inputs, notes)


def stability_range(M: ManifoldModel, lam: Partition, j: int) -> RangeResult:
    return f_or(M, lam, j) if M.orientable else f_nor(M, lam, j)


def simplified_range(M: ManifoldModel, j: int) -> RangeResult:
    """The uniform range j - 1, or floor(j/2) - 1 for non-orientable surfaces."""
    _check_d(M.d)
    inputs = {"d": M.d, "j": j, "orientable": M.orientable}
    if M.d == 2 and not M.orientable:
        return RangeResult(j // 2 - 1, "simplified", inputs)
    return RangeResult(j - 1, "simplified", inputs)


def stratum_ones_range(i: int, d: int, a: int | None = None) -> RangeResult:
    """Stratum stability with i ones: * <= i (d > 2), * < i (d = 2), * < (a+1)i."""
    _check_d(d)
    inputs = {"i": i, "d": d}
    if a is not None and a >= 1:
        inputs["a"] = a
        return RangeResult((a + 1) * i - 1, "stratum-ones", inputs)
    if d > 2:
        return RangeResult(i, "stratum-ones", inputs)
    return RangeResult(i - 1, "stratum-ones", inputs)


def stratum_column_range(p: int, j: int, r: int, n: int, case: str, a: int | None = None) -> RangeResult:
    """Compact-support stability of a depth-p stratum, in degrees * >= bound.

    ``n`` is half the dimension (the formulas are written in 2n).  Cases:
    ``i`` (d > 2), ``ii`` (d = 2, strict) and ``iii`` (condition with ``a``,
    strict).  For case ``iii`` the bound uses (a+1)(j+p); the per-column
    form derived from the ones count, with (a+1)(j-p), is reported in the
    inputs as ``column_form_bound``.
    """
    base = 2 * n * (j + r - p + 1)
    inputs = {"p": p, "j": j, "r": r, "n": n, "case": case}
    if case == "i":
        return RangeResult(base - j + p, "stratum-column", inputs, direction="ge")
    if case == "ii":
        return RangeResult(base - j + p + 1, "stratum-column", inputs, direction="ge")
    if case == "iii":
        if a is None:
            raise ValueError("case iii needs a")
        inputs["a"] = a
        inputs["column_form_bound"] = base - (a + 1) * (j - p) + 1
        notes = ()
        if p > 0:
            notes = ("the (a+1)(j+p) and (a+1)(j-p) forms differ for p > 0",)
        return RangeResult(base - (a + 1) * (j + p) + 1, "stratum-column", inputs, notes, direction="ge")
    raise ValueError(f"unknown case {case!r}; expected i, ii or iii")


def sym_compact_range(n: int, k: int, j: int, a: int | None = None) -> RangeResult:
    """Compact-support stability of Sym_{k+j}: * >= 2n(k+j+1) - (k+j), or - (a+1)(k+j)."""
    inputs = {"n": n, "k": k, "j": j}
    if a is not None:
        inputs["a"] = a
        return RangeResult(2 * n * (k + j + 1) - (a + 1) * (k + j), "sym-compact", inputs, direction="ge")
    return RangeResult(2 * n * (k + j + 1) - (k + j), "sym-compact", inputs, direction="ge")


def integral_surface(k: int, r: int, j: int) -> RangeResult:
    """Integral range for surfaces: min(k+j, 2(k-r) + floor(j/2) - 1) - 1."""
    return RangeResult(min(k + j, 2 * (k - r) + j // 2 - 1) - 1, "integral-surface", {"k": k, "r": r, "j": j})


def bounded_sym(k: int, c: int, d: int) -> RangeResult:
    """Bounded symmetric powers: k - 1 if d > 2, min(k-1, c-4+k) if d = 2."""
    _check_d(d)
    inputs = {"k": k, "c": c, "d": d}
    if d > 2:
        return RangeResult(k - 1, "bounded-sym", inputs)
    return RangeResult(min(k - 1, c - 4 + k), "bounded-sym", inputs)


def _require(params: dict, *names):
    missing = [n for n in names if n not in params]
    if missing:
        raise ValueError(f"missing parameters: {', '.join(missing)}")


def auxiliary_ranges(query: str, params: dict) -> RangeResult:
    """Evaluate any labelled range from a parameter dictionary."""
    p = params
    if query in ("d>2-H1≠0", "d=2-H1≠0", "star_a"):
        _require(p, "M", "lam", "j")
        res = f_or(p["M"], p["lam"], p["j"])
        if res.case != query:
            raise ValueError(f"{p['M'].name} selects case {res.case}, not {query}")
        return res
    if query in ("nonorientable-d>2", "nonorientable-d=2"):
        _require(p, "M", "lam", "j")
        res = f_nor(p["M"], p["lam"], p["j"])
        if res.case != query:
            raise ValueError(f"{p['M'].name} selects case {res.case}, not {query}")
        return res
    if query == "simplified":
        _require(p, "M", "j")
        return simplified_range(p["M"], p["j"])
    if query == "stratum-ones":
        _require(p, "i", "d")
        return stratum_ones_range(p["i"], p["d"], p.get("a"))
    if query == "stratum-column":
        _require(p, "p", "j", "r", "n", "case")
        return stratum_column_range(p["p"], p["j"], p["r"], p["n"], p["case"], p.get("a"))
    if query == "sym-compact":
        _require(p, "n", "k", "j")
        return sym_compact_range(p["n"], p["k"], p["j"], p.get("a"))
    if query == "integral-surface":
        _require(p, "k", "r", "j")
        return integral_surface(p["k"], p["r"], p["j"])
    if query == "bounded-sym":
        _require(p, "k", "c", "d")
        return bounded_sym(p["k"], p["c"], p["d"])
    raise ValueError(f"unknown range label {query!r}; known: {', '.join(CASE_LABELS)}")
