"""Group codes: subgroups of G-valued functions on a finite point space.

A code is stored fully enumerated. Elements are value tuples (one group
element index per point); most routines work on element indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterable, Sequence

from sepiso import kernels
from sepiso.errors import ClosureOverflow, CodeMismatch, SizeOverflow
from sepiso.groups import FiniteGroup, Subgroup, generating_set
from sepiso.spaces import DEFAULT_CLOSURE_CAP, PointSet, PointSpace, SetFamily, sigma_closure

DEFAULT_CODE_CAP = 4096


@dataclass(frozen=True)
class Verdict:
    """Outcome of a yes/no check; ``witness`` pins the first failure."""

    holds: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class GFunction:
    space: PointSpace
    group: FiniteGroup
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.space):
            raise CodeMismatch(f"expected {len(self.space)} values, got {len(self.values)}")

    def __call__(self, x: int) -> int:
        return self.values[x]

    @property
    def zero_mask(self) -> int:
        e = self.group.identity
        return sum(1 << i for i, v in enumerate(self.values) if v == e)

    @property
    def coz_mask(self) -> int:
        return self.space.full_mask & ~self.zero_mask

    def __mul__(self, other: GFunction) -> GFunction:
        t = self.group.table
        return GFunction(self.space, self.group, tuple(t[a][b] for a, b in zip(self.values, other.values)))

    def inverse(self) -> GFunction:
        return GFunction(self.space, self.group, tuple(self.group.inverse[v] for v in self.values))

    def labels(self) -> list[str]:
        return [self.group.labels[v] for v in self.values]

    def __str__(self) -> str:
        return " ".join(self.labels())


def zero_set(f: GFunction) -> PointSet:
    return PointSet(f.space, f.zero_mask)


def cozero_set(f: GFunction) -> PointSet:
    return PointSet(f.space, f.coz_mask)


def coerce_values(space: PointSpace, group: FiniteGroup, f) -> tuple[int, ...]:
    """Accept a GFunction, a sequence of labels, or a sequence of indices."""
    if isinstance(f, GFunction):
        if f.space != space or f.group != group:
            raise CodeMismatch("function lives over a different space or group")
        return f.values
    vals = []
    for v in f:
        if isinstance(v, str):
            if v not in group.labels:
                raise CodeMismatch(f"{v!r} is not an element of the group")
            vals.append(group.index(v))
        elif isinstance(v, int) and 0 <= v < group.order:
            vals.append(v)
        else:
            raise CodeMismatch(f"{v!r} is not an element of the group")
    if len(vals) != len(space):
        raise CodeMismatch(f"expected {len(space)} values, got {len(vals)}")
    return tuple(vals)


@dataclass(frozen=True, eq=False)
class FunctionGroup:
    space: PointSpace
    group: FiniteGroup
    generators: tuple[tuple[int, ...], ...]
    elements: tuple[tuple[int, ...], ...]
    # derivation of element k as elements[parent] * generators[gen]; None for the identity
    derivations: tuple[tuple[int, int] | None, ...] = field(repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FunctionGroup):
            return NotImplemented
        return (
            self.space == other.space
            and self.group == other.group
            and self.generators == other.generators
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.space, self.group, self.generators))

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FunctionGroup(points={len(self.space)}, |G|={self.group.order}, size={len(self)})"

    @property
    def n_points(self) -> int:
        return len(self.space)

    def element(self, i: int) -> GFunction:
        return GFunction(self.space, self.group, self.elements[i])

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {v: i for i, v in enumerate(self.elements)}

    def index_of(self, f) -> int | None:
        return self.index.get(coerce_values(self.space, self.group, f))

    def __contains__(self, f) -> bool:
        return self.index_of(f) is not None

    @cached_property
    def identity_index(self) -> int:
        return self.index[(self.group.identity,) * self.n_points]

    @cached_property
    def zero_masks(self) -> list[int]:
        e = self.group.identity
        return [sum(1 << i for i, v in enumerate(vals) if v == e) for vals in self.elements]

    @cached_property
    def coz_masks(self) -> list[int]:
        full = self.space.full_mask
        return [full & ~z for z in self.zero_masks]

    @cached_property
    def flat_values(self) -> list[int]:
        return [v for vals in self.elements for v in vals]

    @cached_property
    def product_table(self) -> list[int]:
        """Flat |A| x |A| table of element indices under pointwise product."""
        return kernels.product_table(
            self.flat_values, len(self), self.n_points, self.group.flat_table, self.group.order
        )

    def mul_index(self, i: int, j: int) -> int:
        return self.product_table[i * len(self) + j]

    def inverse_index(self, i: int) -> int:
        inv = self.group.inverse
        return self.index[tuple(inv[v] for v in self.elements[i])]

    @cached_property
    def _memo(self) -> dict:
        return {}

    def zero_family(self) -> SetFamily:
        """Z(A): distinct zero sets in element order."""
        return SetFamily.of(self.space, self.zero_masks)

    def cozero_family(self) -> SetFamily:
        return SetFamily.of(self.space, self.coz_masks)

    def sigma_zero(self, cap: int = DEFAULT_CLOSURE_CAP) -> SetFamily:
        key = ("sigma_zero", cap)
        if key not in self._memo:
            self._memo[key] = sigma_closure(self.zero_family(), cap)
        return self._memo[key]

    def sigma_cozero(self, cap: int = DEFAULT_CLOSURE_CAP) -> SetFamily:
        key = ("sigma_coz", cap)
        if key not in self._memo:
            self._memo[key] = sigma_closure(self.cozero_family(), cap)
        return self._memo[key]

    def format_element(self, i: int) -> str:
        return str(self.element(i))


def _pointwise(t, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(t[x][y] for x, y in zip(a, b))


def generate_code(
    space: PointSpace,
    group: FiniteGroup,
    generators: Iterable,
    cap: int = DEFAULT_CODE_CAP,
) -> FunctionGroup:
    """Closure of ``generators`` under pointwise product.

    Elements are listed breadth-first: the identity, then element * generator
    for queue elements in order and generators in input order.
    """
    gens = tuple(coerce_values(space, group, g) for g in generators)
    ident = (group.identity,) * len(space)
    elements = [ident]
    derivations: list[tuple[int, int] | None] = [None]
    index = {ident: 0}
    t = group.table
    i = 0
    while i < len(elements):
        u = elements[i]
        for gi, g in enumerate(gens):
            v = _pointwise(t, u, g)
            if v not in index:
                if len(elements) >= cap:
                    raise SizeOverflow(cap)
                index[v] = len(elements)
                elements.append(v)
                derivations.append((i, gi))
        i += 1
    return FunctionGroup(space, group, gens, tuple(elements), tuple(derivations))


def full_code(space: PointSpace, group: FiniteGroup, cap: int = DEFAULT_CODE_CAP) -> FunctionGroup:
    """C(X, G): generated by point indicators carrying a generating set of G."""
    e = group.identity
    gens = []
    for x in range(len(space)):
        for s in generating_set(group):
            vals = [e] * len(space)
            vals[x] = s
            gens.append(tuple(vals))
    return generate_code(space, group, gens, cap)


def trivial_code(space: PointSpace, group: FiniteGroup) -> FunctionGroup:
    return generate_code(space, group, [])


def enumerate_codes(space: PointSpace, group: FiniteGroup, cap: int = DEFAULT_CODE_CAP) -> list[FunctionGroup]:
    """Every subgroup of C(X, G), each generated by an irredundant list.

    Ordered by size, then by sorted element tuples.
    """
    ambient = full_code(space, group, cap)
    found: dict[frozenset, FunctionGroup] = {}
    start = trivial_code(space, group)
    found[frozenset(start.elements)] = start
    frontier = [start]
    while frontier:
        nxt = []
        for code in frontier:
            members = set(code.elements)
            for v in ambient.elements:
                if v in members:
                    continue
                bigger = generate_code(space, group, list(code.generators) + [v], cap)
                key = frozenset(bigger.elements)
                if key not in found:
                    found[key] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found.values(), key=lambda c: (len(c), sorted(c.elements)))


def evaluation_image(code: FunctionGroup, x: int) -> Subgroup:
    """{f(x) : f in code}, members in order of first appearance."""
    seen: dict[int, None] = {}
    for vals in code.elements:
        seen.setdefault(vals[x], None)
    return Subgroup(code.group, tuple(seen))


def separates_points(code: FunctionGroup) -> Verdict:
    """Every ordered pair of distinct points is split by some element."""
    n = code.n_points
    cozs = set(code.coz_masks)
    for x1, x2 in itertools.permutations(range(n), 2):
        if not any((c >> x1) & 1 and not (c >> x2) & 1 for c in cozs):
            return Verdict(False, (x1, x2))
    return Verdict(True)


def strongly_separates_points(code: FunctionGroup) -> Verdict:
    """Every pair of distinct points lies in two disjoint cozero sets."""
    n = code.n_points
    cozs = sorted(set(code.coz_masks))
    for x1, x2 in itertools.combinations(range(n), 2):
        c1 = [c for c in cozs if (c >> x1) & 1]
        c2 = [c for c in cozs if (c >> x2) & 1]
        if not any(a & b == 0 for a in c1 for b in c2):
            return Verdict(False, (x1, x2))
    return Verdict(True)


def pointwise_dense(code: FunctionGroup) -> Verdict:
    for x in range(code.n_points):
        if not evaluation_image(code, x).is_whole():
            return Verdict(False, x)
    return Verdict(True)


def controllable(code: FunctionGroup, cap: int = DEFAULT_CLOSURE_CAP) -> Verdict:
    """Controllability, quantified as: for all f, D1, D2 there exist U, g.

    Witness on failure: ``(f_index, D1, D2)`` with D1, D2 as PointSets.
    Raises ClosureOverflow if either sigma-closure exceeds ``cap``.
    """
    key = ("controllable", cap)
    memo = code._memo
    if key in memo:
        return memo[key]
    sz = code.sigma_zero(cap)
    sc = code.sigma_cozero(cap)
    bad = kernels.controllable_violation(
        code.flat_values, len(code), code.n_points, code.coz_masks, list(sz.masks), list(sc.masks)
    )
    if bad is None:
        verdict = Verdict(True)
    else:
        f, d1, d2 = bad
        verdict = Verdict(False, (f, PointSet(code.space, d1), PointSet(code.space, d2)))
    memo[key] = verdict
    return verdict


@dataclass(frozen=True)
class Hypotheses:
    """The four structural checks on one code."""

    separates_points: Verdict
    strongly_separates_points: Verdict
    pointwise_dense: Verdict
    controllable: Verdict | None  # None when the closure cap was hit

    @property
    def theorem_ready(self) -> bool:
        return bool(self.separates_points and self.pointwise_dense and self.controllable)


def check_code(code: FunctionGroup, cap: int = DEFAULT_CLOSURE_CAP) -> Hypotheses:
    try:
        ctrl = controllable(code, cap)
    except ClosureOverflow:
        ctrl = None
    return Hypotheses(
        separates_points(code), strongly_separates_points(code), pointwise_dense(code), ctrl
    )


def code_from_labels(space: PointSpace, group: FiniteGroup, rows: Sequence[str | Sequence[str]], cap: int = DEFAULT_CODE_CAP) -> FunctionGroup:
    """Convenience: generators written as label strings like ``"a a e"``."""
    gens = [r.split() if isinstance(r, str) else list(r) for r in rows]
    return generate_code(space, group, gens, cap)
