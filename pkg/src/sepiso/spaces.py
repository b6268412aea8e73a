"""Finite point spaces, point sets as bitmasks, and closed set families."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from sepiso import kernels
from sepiso.errors import ClosureOverflow, NotSeparable, PreconditionViolated

DEFAULT_CLOSURE_CAP = 4096


@dataclass(frozen=True)
class PointSpace:
    labels: tuple[str, ...]

    def __post_init__(self):
        if not self.labels:
            raise ValueError("a point space needs at least one point")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("point labels must be distinct")

    @classmethod
    def of_size(cls, n: int, prefix: str = "x") -> PointSpace:
        return cls(tuple(f"{prefix}{i}" for i in range(n)))

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown point {label!r}") from None

    def subset(self, members: Iterable[int]) -> PointSet:
        mask = 0
        for i in members:
            if not 0 <= i < len(self.labels):
                raise ValueError(f"point index {i} out of range")
            mask |= 1 << i
        return PointSet(self, mask)

    def whole(self) -> PointSet:
        return PointSet(self, self.full_mask)

    def empty(self) -> PointSet:
        return PointSet(self, 0)


@dataclass(frozen=True)
class PointSet:
    space: PointSpace
    mask: int

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i for i in range(len(self.space)) if (self.mask >> i) & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool((self.mask >> i) & 1)

    def __iter__(self):
        return iter(self.members)

    def __or__(self, other: PointSet) -> PointSet:
        return PointSet(self.space, self.mask | other.mask)

    def __and__(self, other: PointSet) -> PointSet:
        return PointSet(self.space, self.mask & other.mask)

    def complement(self) -> PointSet:
        return PointSet(self.space, self.space.full_mask & ~self.mask)

    def issubset(self, other: PointSet) -> bool:
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: PointSet) -> bool:
        return self.mask & other.mask == 0

    def __str__(self) -> str:
        return "{" + ",".join(self.space.labels[i] for i in self.members) + "}"


def popcount(mask: int) -> int:
    return mask.bit_count()


def mask_key(mask: int) -> tuple[int, int]:
    """Family order: by cardinality, then by bitmask value."""
    return (popcount(mask), mask)


@dataclass(frozen=True)
class SetFamily:
    space: PointSpace
    masks: tuple[int, ...]

    @classmethod
    def of(cls, space: PointSpace, sets: Iterable[PointSet | int]) -> SetFamily:
        masks = []
        for s in sets:
            m = s.mask if isinstance(s, PointSet) else int(s)
            if m & ~space.full_mask:
                raise ValueError("set is not contained in the space")
            if m not in masks:
                masks.append(m)
        return cls(space, tuple(masks))

    @property
    def sets(self) -> list[PointSet]:
        return [PointSet(self.space, m) for m in self.masks]

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, s: PointSet | int) -> bool:
        m = s.mask if isinstance(s, PointSet) else s
        return m in self.mask_set

    @cached_property
    def mask_set(self) -> frozenset[int]:
        return frozenset(self.masks)

    def sorted(self) -> SetFamily:
        return SetFamily(self.space, tuple(sorted(self.masks, key=mask_key)))


def sigma_closure(family: SetFamily, cap: int = DEFAULT_CLOSURE_CAP) -> SetFamily:
    """Smallest superfamily closed under binary unions and intersections.

    The empty set and the whole space appear only if generated. The result
    is sorted by (cardinality, bitmask).
    """
    if cap < len(family):
        raise PreconditionViolated(f"cap {cap} is smaller than the family ({len(family)} sets)")
    sets, overflowed = kernels.sigma_closure_masks(list(family.masks), cap)
    if overflowed:
        raise ClosureOverflow(len(sets), cap)
    return SetFamily(family.space, tuple(sorted(sets, key=mask_key)))


def separate_disjoint(
    a: PointSet, b: PointSet, family: SetFamily, cap: int = DEFAULT_CLOSURE_CAP, closed: bool = False
) -> tuple[PointSet, PointSet]:
    """First disjoint pair (D_A, D_B) of the closed family with A <= D_A and B <= D_B.

    Pass ``closed=True`` when ``family`` is already a sigma-closure.
    """
    if not a.mask or not b.mask:
        raise PreconditionViolated("both sets must be nonempty")
    if a.mask & b.mask:
        raise PreconditionViolated(f"{a} and {b} intersect")
    fam = family if closed else sigma_closure(family, cap)
    for da in fam.masks:
        if a.mask & ~da:
            continue
        for db in fam.masks:
            if b.mask & ~db == 0 and da & db == 0:
                return PointSet(a.space, da), PointSet(a.space, db)
    raise NotSeparable(a, b)


def family_from_sets(space: PointSpace, sets: Sequence[Sequence[int]]) -> SetFamily:
    return SetFamily.of(space, [space.subset(s) for s in sets])
