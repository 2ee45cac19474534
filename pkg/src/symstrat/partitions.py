"""Integer partitions, collapse posets and ordered set partitions.

A partition is stored with its parts in non-increasing order, so equality of
multisets is plain tuple equality.  The collapse poset of a partition is the
set of partitions reachable by repeatedly replacing two parts with their sum;
the depth of a collapse is the number of merges it took.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator

from .errors import MismatchedSumError, ResourceBoundError

DEFAULT_MAX_SET_SIZE = 12


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"1,1,2"`` or ``"1+1+2"``; the empty string is the empty partition."""
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls(int(tok) for tok in text.replace("+", ",").split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse partition {text!r}: {exc}") from None

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))

    def __repr__(self) -> str:
        return f"Partition({'+'.join(map(str, self.parts)) or '∅'})"

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def k(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def ones(self) -> int:
        return self.parts.count(1)

    @property
    def multiplicities(self) -> dict[int, int]:
        """Part size l -> number of parts equal to l, increasing in l."""
        return dict(sorted(Counter(self.parts).items()))

    @property
    def is_all_ones(self) -> bool:
        return all(p == 1 for p in self.parts)

    def add_ones(self, j: int) -> "Partition":
        return add_ones(self, j)


def add_ones(lam: Partition, j: int) -> Partition:
    """The partition with ``j`` extra parts equal to 1."""
    if j < 0:
        raise ValueError("j must be non-negative")
    return Partition(lam.parts + (1,) * j)


def partitions_of(k: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``k`` in reverse lexicographic order."""
    if max_part is None:
        max_part = k
    if k == 0:
        yield Partition()
        return
    for first in range(min(k, max_part), 0, -1):
        for rest in partitions_of(k - first, first):
            yield Partition((first,) + rest.parts)


@lru_cache(maxsize=None)
def _elementary(parts: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    out = set()
    n = len(parts)
    for a in range(n):
        for b in range(a + 1, n):
            merged = [p for t, p in enumerate(parts) if t != a and t != b]
            merged.append(parts[a] + parts[b])
            out.add(tuple(sorted(merged, reverse=True)))
    return frozenset(out)


def elementary_collapses(lam: Partition) -> set[Partition]:
    """Partitions obtained from ``lam`` by merging exactly two parts."""
    return {Partition(p) for p in _elementary(lam.parts)}


@lru_cache(maxsize=None)
def _by_depth(parts: tuple[int, ...]) -> tuple[frozenset[tuple[int, ...]], ...]:
    levels = [frozenset([parts])]
    while True:
        nxt = set()
        for mu in levels[-1]:
            nxt |= _elementary(mu)
        if not nxt:
            break
        levels.append(frozenset(nxt))
    return tuple(levels)


def collapses_by_depth(lam: Partition) -> dict[int, list[Partition]]:
    """Map depth p to the sorted list of collapses of ``lam`` of depth p.

    Only non-empty depths appear; depth 0 is always ``[lam]``.

    >>> collapses_by_depth(Partition([1, 2]))
    {0: [Partition(2+1)], 1: [Partition(3)]}
    """
    return {p: sorted(Partition(mu) for mu in level) for p, level in enumerate(_by_depth(lam.parts))}


def col(lam: Partition, p: int) -> list[Partition]:
    """Collapses of depth ``p`` (empty outside 0 <= p < r)."""
    levels = _by_depth(lam.parts)
    if 0 <= p < len(levels):
        return sorted(Partition(mu) for mu in levels[p])
    return []


def all_collapses(lam: Partition) -> set[Partition]:
    return {Partition(mu) for level in _by_depth(lam.parts) for mu in level}


def is_collapse_of(lam: Partition, other: Partition) -> bool:
    """Whether ``other`` arises from ``lam`` by a sequence of merges.

    Decided by searching for a grouping of the parts of ``lam`` whose group
    sums are the parts of ``other``; this does not walk the collapse poset.
    """
    if lam.k != other.k:
        raise MismatchedSumError(f"{lam!r} and {other!r} partition different integers")
    if other.r > lam.r:
        return False
    items = sorted(lam.parts, reverse=True)
    bins = list(other.parts)

    def place(i: int) -> bool:
        if i == len(items):
            return all(b == 0 for b in bins)
        seen = set()
        for t, room in enumerate(bins):
            if room >= items[i] and room not in seen:
                seen.add(room)
                bins[t] -= items[i]
                if place(i + 1):
                    bins[t] += items[i]
                    return True
                bins[t] += items[i]
        return False

    # an untouched target part stays non-zero, so empty groups are rejected
    return place(0)


@dataclass(frozen=True)
class StabCollapseCheck:
    pairs: tuple[tuple[Partition, Partition], ...]
    bijective: bool
    injective: bool
    unhit: tuple[Partition, ...]


def stab_collapse_check(lam: Partition, j: int, p: int) -> StabCollapseCheck:
    """Compare col_p(1^j lam) with col_p(1^{j+1} lam) under mu -> 1 mu."""
    source = col(add_ones(lam, j), p)
    target = set(col(add_ones(lam, j + 1), p))
    pairs = tuple((mu, add_ones(mu, 1)) for mu in source)
    images = [img for _, img in pairs]
    injective = len(set(images)) == len(images)
    in_target = all(img in target for img in images)
    unhit = tuple(sorted(target - set(images)))
    return StabCollapseCheck(pairs, injective and in_target and not unhit, injective, unhit)


@dataclass(frozen=True)
class SetPartition:
    """Blocks of a partition of {1, ..., m}, ordered by smallest element."""

    blocks: tuple[tuple[int, ...], ...]

    def __init__(self, blocks: Iterable[Iterable[int]]):
        bl = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else 0))
        if any(not b for b in bl):
            raise ValueError("blocks must be non-empty")
        elems = [x for b in bl for x in b]
        if sorted(elems) != list(range(1, len(elems) + 1)):
            raise ValueError(f"blocks {bl} do not partition 1..{len(elems)}")
        object.__setattr__(self, "blocks", bl)

    @property
    def m(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def shape(self) -> Partition:
        return Partition(len(b) for b in self.blocks)

    def ordered_blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks by decreasing size, ties broken by increasing smallest element."""
        return tuple(sorted(self.blocks, key=lambda b: (-len(b), b[0])))

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def _count_set_partitions(shape: Partition) -> int:
    denom = 1
    for l, n in shape.multiplicities.items():
        denom *= factorial(l) ** n * factorial(n)
    return factorial(shape.k) // denom


def ord_set_partitions(shape: Partition, max_size: int = DEFAULT_MAX_SET_SIZE) -> list[SetPartition]:
    """All set partitions of {1, ..., k} with block sizes ``shape``.

    Generated in restricted-growth order: the smallest unused element always
    opens the next block, so no set partition is produced twice.
    """
    k = shape.k
    if k > max_size:
        raise ResourceBoundError(f"set partitions of a {k}-element set exceed the bound {max_size}")
    need = Counter(shape.parts)
    out: list[SetPartition] = []

    def grow(unused: tuple[int, ...], blocks: list[tuple[int, ...]]):
        if not unused:
            out.append(SetPartition(blocks))
            return
        first, rest = unused[0], unused[1:]
        for size in sorted(need):
            if need[size] == 0:
                continue
            need[size] -= 1
            for others in _subsets(rest, size - 1):
                remaining = tuple(x for x in rest if x not in others)
                grow(remaining, blocks + [(first,) + others])
            need[size] += 1

    grow(tuple(range(1, k + 1)), [])
    out.sort(key=lambda sp: sp.blocks)
    return out


def _subsets(items: tuple[int, ...], size: int) -> Iterator[tuple[int, ...]]:
    if size == 0:
        yield ()
        return
    for t in range(len(items) - size + 1):
        for rest in _subsets(items[t + 1:], size - 1):
            yield (items[t],) + rest


def canonical_set_partition(shape: Partition) -> SetPartition:
    """The set partition into consecutive runs, largest blocks first.

    ``2+1`` gives ``{1,2}{3}``.
    """
    blocks, start = [], 1
    for size in shape.parts:
        blocks.append(tuple(range(start, start + size)))
        start += size
    return SetPartition(blocks)


@dataclass(frozen=True)
class StabilizerShape:
    """The group prod_l S_l wr S_{n(l)} preserving a set partition."""

    factors: dict[int, int] = field(hash=False)
    order: int

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.factors.items())), self.order))


def stabilizer_shape(lam_set: SetPartition) -> StabilizerShape:
    factors = lam_set.shape.multiplicities
    order = 1
    for l, n in factors.items():
        order *= factorial(l) ** n * factorial(n)
    return StabilizerShape(factors, order)
