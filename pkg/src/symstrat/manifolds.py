"""Manifolds as rational homological data."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import UnsupportedModelError
from .graded import GradedDim


@dataclass(frozen=True)
class ManifoldModel:
    name: str
    d: int
    orientable: bool
    open_interior: bool
    betti: GradedDim
    chi_c: int
    euclidean_like: bool = False

    def __post_init__(self):
        if not isinstance(self.betti, GradedDim):
            object.__setattr__(self, "betti", GradedDim(self.betti))

    @property
    def h1_nonzero(self) -> bool:
        return self.betti[1] != 0

    @property
    def punctures(self) -> int:
        # Euclidean-like models are R^d minus some points; b_{d-1} counts them.
        return self.betti[self.d - 1] if self.euclidean_like else 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.d,
            "orientable": self.orientable,
            "open": self.open_interior,
            "betti": list(self.betti.padded(max(len(self.betti), 1))),
            "chi_c": self.chi_c,
            "euclidean_like": self.euclidean_like,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "ManifoldModel":
        try:
            return cls(
                name=str(doc["name"]),
                d=int(doc["dim"]),
                orientable=bool(doc["orientable"]),
                open_interior=bool(doc["open"]),
                betti=GradedDim([int(b) for b in doc["betti"]]),
                chi_c=int(doc["chi_c"]),
                euclidean_like=bool(doc.get("euclidean_like", False)),
            )
        except KeyError as exc:
            raise ValueError(f"manifold document lacks field {exc}") from None


def euclidean(d: int) -> ManifoldModel:
    return ManifoldModel(f"R{d}", d, True, True, GradedDim([1]), (-1) ** d, True)


@dataclass(frozen=True)
class ConditionA:
    """Largest ``a < d - 1`` with vanishing reduced Betti numbers up to ``a``.

    ``a`` is ``None`` when the first Betti number is non-zero.
    """

    a: int | None

    @property
    def holds_for(self) -> str | int:
        return "none (H_1 ≠ 0)" if self.a is None else self.a


def condition_a(M: ManifoldModel) -> ConditionA:
    if M.betti[1] != 0:
        return ConditionA(None)
    a = 0
    while a + 1 < M.d - 1 and M.betti[a + 1] == 0:
        a += 1
    return ConditionA(a)


def puncture(M: ManifoldModel, r: int) -> ManifoldModel:
    """Remove ``r`` points from a Euclidean-like model.

    Rationally R^d minus r points is a wedge of r spheres of dimension d - 1.
    """
    if not M.euclidean_like:
        raise UnsupportedModelError(f"puncturing is only exact for Euclidean-like models, not {M.name}")
    if r < 0:
        raise ValueError("r must be non-negative")
    if r == 0:
        return M
    total = M.punctures + r
    betti = {0: 1}
    betti[M.d - 1] = betti.get(M.d - 1, 0) + total
    base = M.name.split("-")[0]
    return replace(
        M,
        name=f"{base}-{total}pt",
        open_interior=True,
        betti=GradedDim(betti),
        chi_c=M.chi_c - r,
    )


def validate(M: ManifoldModel) -> list[str]:
    problems = []
    if M.d < 2:
        problems.append(f"dimension {M.d} < 2")
    if M.betti[0] != 1:
        problems.append("not connected" if M.betti[0] > 1 else "b_0 must be 1")
    if M.betti.top_degree > M.d:
        problems.append(f"Betti number in degree {M.betti.top_degree} above dimension {M.d}")
    if not M.open_interior and M.d % 2 == 0 and M.chi_c != M.betti.euler():
        problems.append(f"closed even-dimensional model has chi_c {M.chi_c} != Euler characteristic {M.betti.euler()}")
    if M.euclidean_like:
        expected = (-1) ** M.d - M.punctures
        if M.chi_c != expected:
            problems.append(f"Euclidean-like model has chi_c {M.chi_c}, expected {expected}")
        if not M.orientable:
            problems.append("Euclidean-like model must be orientable")
    return problems


def _library() -> dict[str, ManifoldModel]:
    lib = {}
    for d in range(2, 7):
        lib[f"R{d}"] = euclidean(d)
    for d, r in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1)]:
        m = puncture(euclidean(d), r)
        lib[m.name] = m
    lib["S2"] = ManifoldModel("S2", 2, True, False, GradedDim([1, 0, 1]), 2)
    # Open solid torus S^1 x R^2: chi = 0, so chi_c = -chi = 0 in odd dimension.
    lib["solid-torus"] = ManifoldModel("solid-torus", 3, True, True, GradedDim([1, 1]), 0)
    lib["annulus"] = ManifoldModel("annulus", 2, True, True, GradedDim([1, 1]), 0)
    # Non-orientable placeholders, used by the range formulas only.
    lib["mobius"] = ManifoldModel("mobius", 2, False, True, GradedDim([1, 1]), 0)
    lib["mobius3"] = ManifoldModel("mobius3", 3, False, True, GradedDim([1, 1]), 0)
    return lib


BUILTIN = _library()


def load_manifold(selector: str) -> ManifoldModel:
    """A built-in model by name, or a JSON file path."""
    if selector in BUILTIN:
        return BUILTIN[selector]
    path = Path(selector)
    if path.suffix == ".json" or path.exists():
        with path.open(encoding="utf-8") as fh:
            return ManifoldModel.from_json(json.load(fh))
    raise KeyError(f"unknown manifold {selector!r}; built-ins: {', '.join(sorted(BUILTIN))}")
