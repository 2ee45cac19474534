"""Finitely supported graded dimensions (Poincaré polynomials)."""

from __future__ import annotations

from typing import Iterable, Mapping


class GradedDim:
    """Non-negative integers indexed by degree 0, 1, 2, ...

    Trailing zeros are dropped, so two instances compare equal exactly when
    their Poincaré polynomials agree.

    >>> GradedDim([1, 0, 1]).total
    2
    >>> GradedDim({3: 1}).shift(-1)
    GradedDim([0, 0, 1])
    """

    __slots__ = ("_dims",)

    def __init__(self, dims: Iterable[int] | Mapping[int, int] = ()):
        if isinstance(dims, Mapping):
            top = max((q for q, v in dims.items() if v), default=-1)
            values = [0] * (top + 1)
            for q, v in dims.items():
                if v:
                    if q < 0:
                        raise ValueError(f"negative degree {q}")
                    values[q] += v
        else:
            values = list(dims)
        for v in values:
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"graded dimensions must be non-negative integers, got {v!r}")
        while values and values[-1] == 0:
            values.pop()
        self._dims = tuple(values)

    @property
    def dims(self) -> tuple[int, ...]:
        return self._dims

    def __getitem__(self, q: int) -> int:
        if 0 <= q < len(self._dims):
            return self._dims[q]
        return 0

    def __len__(self) -> int:
        return len(self._dims)

    def __iter__(self):
        return iter(self._dims)

    def __eq__(self, other) -> bool:
        if isinstance(other, GradedDim):
            return self._dims == other._dims
        if isinstance(other, (tuple, list)):
            return self == GradedDim(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._dims)

    def __repr__(self) -> str:
        return f"GradedDim({list(self._dims)})"

    def __add__(self, other: "GradedDim") -> "GradedDim":
        n = max(len(self), len(other))
        return GradedDim([self[q] + other[q] for q in range(n)])

    @property
    def total(self) -> int:
        return sum(self._dims)

    @property
    def top_degree(self) -> int:
        """Highest degree with a non-zero entry, -1 for the zero object."""
        return len(self._dims) - 1

    def euler(self) -> int:
        return sum((-1) ** q * v for q, v in enumerate(self._dims))

    def shift(self, s: int) -> "GradedDim":
        """Move every entry from degree q to degree q + s."""
        items = {q + s: v for q, v in enumerate(self._dims) if v}
        return GradedDim(items)

    def regrade(self, top: int) -> "GradedDim":
        """Send degree q to degree top - q (Poincaré duality bookkeeping)."""
        items = {}
        for q, v in enumerate(self._dims):
            if v:
                if top - q < 0:
                    raise ValueError(f"cannot regrade degree {q} against top {top}")
                items[top - q] = v
        return GradedDim(items)

    def as_dict(self) -> dict[int, int]:
        return {q: v for q, v in enumerate(self._dims) if v}

    def padded(self, length: int) -> list[int]:
        return [self[q] for q in range(length)]
