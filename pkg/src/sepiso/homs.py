"""Homomorphisms between codes and the separating / biseparating checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from sepiso import kernels
from sepiso.codes import FunctionGroup, GFunction, Verdict, coerce_values
from sepiso.errors import (
    CodeMismatch,
    ImageOutsideTarget,
    NotBijective,
    NotHomomorphic,
    NotWellDefined,
)
from sepiso.groups import FiniteGroup, GroupMap


@dataclass(frozen=True, eq=False)
class CodeHom:
    source: FunctionGroup
    target: FunctionGroup
    element_map: tuple[int, ...]
    generator_images: tuple[tuple[int, ...], ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CodeHom):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.element_map == other.element_map
        )

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.element_map))

    def __repr__(self) -> str:
        return f"CodeHom({self.source!r} -> {self.target!r})"

    def apply(self, f) -> GFunction:
        i = self.source.index_of(f)
        if i is None:
            raise CodeMismatch(f"{f} is not an element of the source code")
        return self.target.element(self.element_map[i])

    def image_values(self, i: int) -> tuple[int, ...]:
        return self.target.elements[self.element_map[i]]

    @cached_property
    def image_coz_masks(self) -> list[int]:
        cz = self.target.coz_masks
        return [cz[j] for j in self.element_map]

    def is_injective(self) -> bool:
        return len(set(self.element_map)) == len(self.element_map)

    def is_bijective(self) -> bool:
        return self.is_injective() and len(self.element_map) == len(self.target)


def _check_same_group(a: FunctionGroup, b: FunctionGroup) -> None:
    if a.group != b.group:
        raise CodeMismatch("source and target codes take values in different groups")


def _law(a: FunctionGroup, b: FunctionGroup, emap: Sequence[int]) -> None:
    bad = kernels.hom_law_violation(
        list(range(len(a))), a.product_table, len(a), list(emap), b.product_table, len(b)
    )
    if bad is not None:
        i, j = bad
        raise NotHomomorphic(a.format_element(i), a.format_element(j))


def build_hom(source: FunctionGroup, target: FunctionGroup, generator_images: Iterable) -> CodeHom:
    """Extend generator images along the derivations of the source code.

    Every (element, generator) product is checked, so two derivations of
    the same element that disagree raise NotWellDefined.
    """
    _check_same_group(source, target)
    imgs = [coerce_values(target.space, target.group, g) for g in generator_images]
    if len(imgs) != len(source.generators):
        raise CodeMismatch(f"need {len(source.generators)} generator images, got {len(imgs)}")
    gimg = []
    for v in imgs:
        j = target.index.get(v)
        if j is None:
            raise ImageOutsideTarget(" ".join(target.group.labels[x] for x in v))
        gimg.append(j)

    n = len(source)
    emap = [-1] * n
    emap[source.identity_index] = target.identity_index
    for k, der in enumerate(source.derivations):
        if der is not None:
            p, gi = der
            emap[k] = target.mul_index(emap[p], gimg[gi])
    gen_idx = [source.index[g] for g in source.generators]
    for u in range(n):
        for gi, gk in enumerate(gen_idx):
            v = source.mul_index(u, gk)
            val = target.mul_index(emap[u], gimg[gi])
            if emap[v] != val:
                raise NotWellDefined(
                    source.format_element(v), target.format_element(emap[v]), target.format_element(val)
                )
    _law(source, target, emap)
    return CodeHom(source, target, tuple(emap), tuple(target.elements[j] for j in gimg))


def hom_from_element_map(source: FunctionGroup, target: FunctionGroup, element_map: Sequence[int]) -> CodeHom:
    """CodeHom from an explicit total element map (law checked)."""
    _check_same_group(source, target)
    emap = list(element_map)
    if len(emap) != len(source) or any(not 0 <= j < len(target) for j in emap):
        raise CodeMismatch("element map must send every source element to a target index")
    _law(source, target, emap)
    gimg = tuple(target.elements[emap[source.index[g]]] for g in source.generators)
    return CodeHom(source, target, tuple(emap), gimg)


def hom_from_function(
    source: FunctionGroup, target: FunctionGroup, fn: Callable[[tuple[int, ...]], Sequence[int]]
) -> CodeHom:
    """CodeHom from a function on value tuples."""
    emap = []
    for vals in source.elements:
        out = tuple(fn(vals))
        j = target.index.get(out)
        if j is None:
            raise ImageOutsideTarget(" ".join(target.group.labels[x] for x in out))
        emap.append(j)
    return hom_from_element_map(source, target, emap)


def weighted_composition(
    source: FunctionGroup,
    target: FunctionGroup,
    support: Sequence[int],
    weights: Sequence[GroupMap],
) -> CodeHom:
    """The map f -> (y -> weights[y](f(support[y])))."""
    if len(support) != len(target.space) or len(weights) != len(target.space):
        raise CodeMismatch("need one support point and one weight per target point")
    tables = [w.as_dict for w in weights]
    pairs = list(zip(support, tables))
    return hom_from_function(source, target, lambda vals: [w[vals[x]] for x, w in pairs])


def identity_hom(code: FunctionGroup) -> CodeHom:
    return CodeHom(code, code, tuple(range(len(code))), code.generators)


def invert(hom: CodeHom) -> CodeHom:
    if not hom.is_injective():
        raise NotBijective("not injective")
    if len(hom.element_map) != len(hom.target):
        raise NotBijective("not onto the target code")
    inv = [0] * len(hom.target)
    for i, j in enumerate(hom.element_map):
        inv[j] = i
    src, tgt = hom.target, hom.source
    gimg = tuple(tgt.elements[inv[src.index[g]]] for g in src.generators)
    return CodeHom(src, tgt, tuple(inv), gimg)


def is_separating(hom: CodeHom) -> Verdict:
    """Disjoint cozeros in the source map to disjoint cozeros.

    Witness: the first pair ``(i, j)`` of source element indices, i < j.
    """
    bad = kernels.separating_violation(hom.source.coz_masks, hom.image_coz_masks)
    if bad is None:
        return Verdict(True)
    return Verdict(False, bad)


def is_biseparating(hom: CodeHom) -> Verdict:
    """Raises NotBijective when the inverse does not exist.

    Witness on failure: ``("forward" | "inverse", (i, j))``.
    """
    inv = invert(hom)
    fwd = is_separating(hom)
    if not fwd:
        return Verdict(False, ("forward", fwd.witness))
    back = is_separating(inv)
    if not back:
        return Verdict(False, ("inverse", back.witness))
    return Verdict(True)


def enumerate_homs(source: FunctionGroup, target: FunctionGroup, bijective_only: bool = False) -> list[CodeHom]:
    """Every homomorphism, found by trying all images for the source generators."""
    out = []
    for choice in itertools.product(range(len(target)), repeat=len(source.generators)):
        try:
            hom = build_hom(source, target, [target.elements[j] for j in choice])
        except (NotWellDefined, NotHomomorphic):
            continue
        if bijective_only and not hom.is_bijective():
            continue
        out.append(hom)
    return out


@dataclass(frozen=True, eq=False)
class PointFunctional:
    """A homomorphism from a code into G, stored as one value per code element."""

    source: FunctionGroup
    group: FiniteGroup
    values: tuple[int, ...]

    @property
    def is_null(self) -> bool:
        e = self.group.identity
        return all(v == e for v in self.values)

    @cached_property
    def nonnull(self) -> list[bool]:
        e = self.group.identity
        return [v != e for v in self.values]


def point_functional(hom: CodeHom, y: int) -> PointFunctional:
    """f -> Hf(y)."""
    if not 0 <= y < len(hom.target.space):
        raise CodeMismatch(f"point {y} is outside the target space")
    tgt = hom.target.elements
    return PointFunctional(hom.source, hom.source.group, tuple(tgt[j][y] for j in hom.element_map))


def evaluation_functional(code: FunctionGroup, x: int) -> PointFunctional:
    return PointFunctional(code, code.group, tuple(v[x] for v in code.elements))


def functional_is_separating(phi: PointFunctional) -> Verdict:
    """No two disjoint-cozero elements both evaluate to non-identity."""
    cz = phi.source.coz_masks
    nn = phi.nonnull
    live = [i for i in range(len(cz)) if nn[i]]
    for a, b in itertools.combinations(live, 2):
        if cz[a] & cz[b] == 0:
            return Verdict(False, (a, b))
    return Verdict(True)
