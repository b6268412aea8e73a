"""Finite groups given by multiplication tables.

Elements are referred to by index into ``FiniteGroup.labels``; the label is
only used for input and output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from sepiso import kernels
from sepiso.errors import (
    GroupError,
    GroupTooLarge,
    MissingInverse,
    NoIdentity,
    NotAHomomorphism,
    NotAssociative,
    NotClosed,
)

MAX_ENUMERATION_ORDER = 16

ENDOMORPHISM = "endomorphism"
AUTOMORPHISM = "automorphism"
PARTIAL = "partial-homomorphism"


@dataclass(frozen=True)
class FiniteGroup:
    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    @cached_property
    def _label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise GroupError(f"unknown element label {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    @cached_property
    def flat_table(self) -> list[int]:
        return [c for row in self.table for c in row]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order}, labels={list(self.labels)})"


def _resolve(entry, lookup: dict, n: int) -> int | None:
    if isinstance(entry, str) or entry in lookup:
        return lookup.get(entry)
    if isinstance(entry, int) and not isinstance(entry, bool) and 0 <= entry < n:
        return entry
    return None


def validate_group(labels: Sequence[str], table: Sequence[Sequence]) -> FiniteGroup:
    """Build a FiniteGroup, checking closure, identity, inverses, associativity.

    Table entries may be labels or element indices.
    """
    labels = tuple(str(x) for x in labels)
    n = len(labels)
    if n == 0:
        raise GroupError("a group needs at least one element")
    if len(set(labels)) != n:
        raise GroupError("element labels must be distinct")
    if len(table) != n or any(len(row) != n for row in table):
        raise GroupError(f"table must be {n}x{n}")
    lookup = {lab: i for i, lab in enumerate(labels)}
    rows = []
    for i, row in enumerate(table):
        out = []
        for j, entry in enumerate(row):
            k = _resolve(entry, lookup, n)
            if k is None:
                raise NotClosed(i, j, entry)
            out.append(k)
        rows.append(tuple(out))
    t = tuple(rows)

    identity = next(
        (i for i in range(n) if all(t[i][j] == j and t[j][i] == j for j in range(n))),
        None,
    )
    if identity is None:
        raise NoIdentity()
    inverse = []
    for i in range(n):
        j = next((j for j in range(n) if t[i][j] == identity and t[j][i] == identity), None)
        if j is None:
            raise MissingInverse(i)
        inverse.append(j)
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            raise NotAssociative(a, b, c)
    return FiniteGroup(labels, t, identity, tuple(inverse))


_LETTERS = [c for c in "abcdefghijklmnopqrstuvwxyz" if c != "e"]


def _default_labels(n: int) -> list[str]:
    if n <= len(_LETTERS) + 1:
        return ["e"] + _LETTERS[: n - 1]
    return [f"g{i}" for i in range(n)]


def cyclic_group(n: int, labels: Sequence[str] | None = None) -> FiniteGroup:
    """Z_n with element i the i-th power of the generator (labels e, a, b, ...)."""
    labels = list(labels) if labels is not None else _default_labels(n)
    return validate_group(labels, [[(i + j) % n for j in range(n)] for i in range(n)])


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    """G1 x G2, elements ordered lexicographically by (i1, i2)."""
    pairs = list(itertools.product(range(g1.order), range(g2.order)))
    pos = {p: k for k, p in enumerate(pairs)}
    labels = [f"({g1.labels[a]},{g2.labels[b]})" for a, b in pairs]
    table = [[pos[(g1.table[a][c], g2.table[b][d])] for c, d in pairs] for a, b in pairs]
    return validate_group(labels, table)


def symmetric_group(n: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(n)))
    pos = {p: k for k, p in enumerate(perms)}
    labels = ["".join(map(str, p)) for p in perms]
    # (p*q)(i) = p(q(i))
    table = [[pos[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return validate_group(labels, table)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    members: tuple[int, ...]

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.member_set

    def is_whole(self) -> bool:
        return len(self.members) == self.parent.order

    def order_profile(self) -> tuple[int, ...]:
        """Sorted element orders; equal for isomorphic subgroups."""
        return tuple(sorted(self.parent.element_order(g) for g in self.members))


def subgroup_closure(group: FiniteGroup, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``seeds``.

    Members come out breadth-first: identity, then seeds in the given order,
    then products member * seed in queue order.
    """
    gens = []
    for s in seeds:
        if not 0 <= s < group.order:
            raise GroupError(f"seed {s} is not an element index")
        if s not in gens:
            gens.append(s)
    members = [group.identity]
    seen = {group.identity}
    for s in gens:
        if s not in seen:
            seen.add(s)
            members.append(s)
    i = 0
    while i < len(members):
        u = members[i]
        for s in gens:
            v = group.table[u][s]
            if v not in seen:
                seen.add(v)
                members.append(v)
        i += 1
    return Subgroup(group, tuple(members))


@dataclass(frozen=True)
class GroupMap:
    """A homomorphism from a subgroup of ``group`` (the domain) into ``group``."""

    group: FiniteGroup
    domain: tuple[int, ...]
    images: tuple[int, ...]
    kind: str = field(default=PARTIAL)

    def __call__(self, g: int) -> int:
        return self.as_dict[g]

    @cached_property
    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.domain, self.images))

    @property
    def is_total(self) -> bool:
        return len(self.domain) == self.group.order

    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_bijective(self) -> bool:
        return self.is_total and self.is_injective()

    def full_images(self) -> tuple[int, ...]:
        """Images as a tuple indexed by element (total maps only)."""
        if not self.is_total:
            raise GroupError("map is not defined on the whole group")
        d = self.as_dict
        return tuple(d[g] for g in range(self.group.order))

    def compose(self, inner: GroupMap) -> GroupMap:
        """``self o inner`` on the part of ``inner``'s domain mapped into ``self``'s domain."""
        d = self.as_dict
        dom = tuple(g for g in inner.domain if inner(g) in d)
        return make_group_map(self.group, dom, [d[inner(g)] for g in dom])

    def is_identity(self) -> bool:
        return all(g == v for g, v in zip(self.domain, self.images))

    def labelled(self) -> list[tuple[str, str]]:
        lab = self.group.labels
        return [(lab[g], lab[v]) for g, v in zip(self.domain, self.images)]


def _classify(group: FiniteGroup, domain: Sequence[int], images: Sequence[int]) -> str:
    if len(domain) != group.order:
        return PARTIAL
    return AUTOMORPHISM if len(set(images)) == group.order else ENDOMORPHISM


def make_group_map(group: FiniteGroup, domain: Sequence[int], images: Sequence[int]) -> GroupMap:
    """Checked constructor: the domain must be a subgroup and the law must hold."""
    if len(images) != len(domain):
        raise GroupError("domain and images differ in length")
    lookup = dict(zip(domain, images))
    domain = tuple(sorted(lookup))
    if len(lookup) != len(images):
        raise GroupError("duplicate domain element")
    full = [-1] * group.order
    for g, v in lookup.items():
        if not 0 <= v < group.order:
            raise GroupError(f"image {v} is not an element index")
        full[g] = v
    bad = kernels.hom_law_violation(
        list(domain), group.flat_table, group.order, full, group.flat_table, group.order
    )
    if bad is not None:
        raise NotAHomomorphism(*bad)
    imgs = tuple(lookup[g] for g in domain)
    return GroupMap(group, domain, imgs, _classify(group, domain, imgs))


def generating_set(group: FiniteGroup) -> list[int]:
    """Greedy generating set: scan elements by index, keep those not yet generated."""
    gens: list[int] = []
    current = {group.identity}
    for g in range(group.order):
        if g not in current:
            gens.append(g)
            current = subgroup_closure(group, gens).member_set
    return gens


def _extend(group: FiniteGroup, gens: list[int], targets: Sequence[int]) -> list[int] | None:
    images = [-1] * group.order
    images[group.identity] = group.identity
    queue = [group.identity]
    t = group.table
    for u in queue:
        iu = images[u]
        for g, tg in zip(gens, targets):
            v = t[u][g]
            val = t[iu][tg]
            if images[v] < 0:
                images[v] = val
                queue.append(v)
            elif images[v] != val:
                return None
    return images


def enumerate_endomorphisms(group: FiniteGroup, max_order: int = MAX_ENUMERATION_ORDER) -> list[GroupMap]:
    """All endomorphisms, ordered lexicographically by image tuple.

    Backtracks over images of a generating set rather than all n**n maps.
    """
    if group.order > max_order:
        raise GroupTooLarge(group.order, max_order)
    gens = generating_set(group)
    n = group.order
    found = []
    for targets in itertools.product(range(n), repeat=len(gens)):
        images = _extend(group, gens, targets)
        if images is None:
            continue
        if kernels.hom_law_violation(
            list(range(n)), group.flat_table, n, images, group.flat_table, n
        ) is None:
            found.append(tuple(images))
    found.sort()
    dom = tuple(range(n))
    return [GroupMap(group, dom, imgs, _classify(group, dom, imgs)) for imgs in found]


def enumerate_automorphisms(group: FiniteGroup, max_order: int = MAX_ENUMERATION_ORDER) -> list[GroupMap]:
    return [m for m in enumerate_endomorphisms(group, max_order) if m.kind == AUTOMORPHISM]


def identity_map(group: FiniteGroup) -> GroupMap:
    dom = tuple(range(group.order))
    return GroupMap(group, dom, dom, AUTOMORPHISM)
