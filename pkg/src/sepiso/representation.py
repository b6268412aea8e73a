"""Supports, the support map, weights, and the weighted-composition decomposition.

For a separating homomorphism H between codes, each target point y gets a
source point h(y) (the singleton support of f -> Hf(y)) and a weight
w[y]: G_{h(y)} -> G with Hf(y) = w[y](f(h(y))).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field

from sepiso import kernels
from sepiso.codes import FunctionGroup, Hypotheses, Verdict, check_code, evaluation_image
from sepiso.errors import (
    CodeMismatch,
    ConsistencyError,
    NotEquivalent,
    NotSeparating,
    NullFunctional,
    RepresentationFailed,
    SearchBudgetExceeded,
    SupportAmbiguous,
    WeightIllDefined,
)
from sepiso.groups import GroupMap, enumerate_automorphisms, make_group_map
from sepiso.homs import (
    CodeHom,
    PointFunctional,
    invert,
    is_biseparating,
    is_separating,
    point_functional,
    weighted_composition,
)
from sepiso.spaces import DEFAULT_CLOSURE_CAP, PointSet

DEFAULT_SEARCH_CAP = 1_000_000


# --- supports -----------------------------------------------------------------


def is_support(phi: PointFunctional, s: PointSet) -> Verdict:
    """S is a support if every element vanishing on S is sent to the identity.

    Witness on failure: the index of an element vanishing on S with a
    non-identity value.
    """
    mask = s.mask
    for i, (z, live) in enumerate(zip(phi.source.zero_masks, phi.nonnull)):
        if live and mask & ~z == 0:
            return Verdict(False, i)
    return Verdict(True)


@dataclass(frozen=True)
class SupportReport:
    functional: PointFunctional
    minimal_supports: tuple[PointSet, ...]

    @property
    def is_singleton_minimum(self) -> bool:
        # a unique minimal support is contained in every support
        return len(self.minimal_supports) == 1 and len(self.minimal_supports[0]) == 1

    @property
    def singletons(self) -> list[int]:
        return [s.members[0] for s in self.minimal_supports if len(s) == 1]


def minimal_supports_oracle(phi: PointFunctional) -> SupportReport:
    """Brute force: scan all subsets by size, then lexicographically."""
    if phi.is_null:
        raise NullFunctional("<functional>")
    space = phi.source.space
    found: list[PointSet] = []
    for k in range(len(space) + 1):
        for members in itertools.combinations(range(len(space)), k):
            s = space.subset(members)
            if any(m.issubset(s) for m in found):
                continue
            if is_support(phi, s):
                found.append(s)
    return SupportReport(phi, tuple(found))


def singleton_support_candidates(hom: CodeHom, y: int) -> list[int]:
    phi = point_functional(hom, y)
    return kernels.singleton_supports(hom.source.zero_masks, phi.nonnull, hom.source.n_points)


def support_map(hom: CodeHom) -> tuple[int, ...]:
    """h(y) = the unique x with {x} a support of f -> Hf(y), for every y."""
    sep = is_separating(hom)
    if not sep:
        i, j = sep.witness
        raise NotSeparating(hom.source.format_element(i), hom.source.format_element(j))
    src = hom.source
    ylabels = hom.target.space.labels
    h = []
    for y in range(hom.target.n_points):
        phi = point_functional(hom, y)
        if phi.is_null:
            raise NullFunctional(ylabels[y])
        cands = kernels.singleton_supports(src.zero_masks, phi.nonnull, src.n_points)
        if len(cands) != 1:
            raise SupportAmbiguous(ylabels[y], [src.space.labels[x] for x in cands])
        h.append(cands[0])
    return tuple(h)


def weight_at(hom: CodeHom, h: tuple[int, ...], y: int) -> GroupMap:
    """w[y](f(h(y))) := Hf(y), checked for well-definedness."""
    x = h[y]
    group = hom.source.group
    values: dict[int, int] = {}
    for i, vals in enumerate(hom.source.elements):
        g = vals[x]
        v = hom.image_values(i)[y]
        prev = values.setdefault(g, v)
        if prev != v:
            raise WeightIllDefined(
                hom.target.space.labels[y], group.labels[g], (group.labels[prev], group.labels[v])
            )
    domain = evaluation_image(hom.source, x).members
    return make_group_map(group, domain, [values[g] for g in domain])


# --- decomposition --------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Decomposition:
    hom: CodeHom
    support_map: tuple[int, ...]
    weights: tuple[GroupMap, ...]
    source_hypotheses: Hypotheses | None = None
    target_hypotheses: Hypotheses | None = None
    biseparating: Verdict | None = None
    # decomposition of the inverse, computed when the theorem's hypotheses hold
    inverse: Decomposition | None = None
    inverse_consistent: bool | None = None
    support_reports: tuple[SupportReport, ...] | None = field(default=None, repr=False)

    @property
    def weight_kinds(self) -> tuple[str, ...]:
        return tuple(w.kind for w in self.weights)

    @property
    def theorem_applies(self) -> bool:
        return bool(
            self.source_hypotheses is not None
            and self.target_hypotheses is not None
            and self.source_hypotheses.theorem_ready
            and self.target_hypotheses.theorem_ready
            and self.biseparating
        )

    def is_bijective_support(self) -> bool:
        return sorted(self.support_map) == list(range(self.hom.source.n_points)) and len(
            self.support_map
        ) == self.hom.source.n_points


def verify_representation(hom: CodeHom, h: tuple[int, ...], weights) -> None:
    """Check Hf(y) = w[y](f(h(y))) for every element f and target point y."""
    tables = [w.as_dict for w in weights]
    src = hom.source
    for i, vals in enumerate(src.elements):
        out = hom.image_values(i)
        for y, (x, w) in enumerate(zip(h, tables)):
            if w.get(vals[x]) != out[y]:
                raise RepresentationFailed(src.format_element(i), hom.target.space.labels[y])


def _check_inverse(d: Decomposition, inv: Decomposition) -> None:
    h, k = d.support_map, inv.support_map
    if any(k[h[y]] != y for y in range(len(h))) or any(h[k[x]] != x for x in range(len(k))):
        raise ConsistencyError(f"inverse support map {k} is not the inverse of {h}")
    for y, w in enumerate(d.weights):
        rho = inv.weights[h[y]]
        if not (rho.compose(w).is_identity() and w.compose(rho).is_identity()):
            raise ConsistencyError(f"weights at {d.hom.target.space.labels[y]} are not mutually inverse")


def decompose(
    hom: CodeHom,
    cap: int = DEFAULT_CLOSURE_CAP,
    oracle: bool = False,
    check_theorem: bool = True,
) -> Decomposition:
    """Support map and weights of a separating H, verified on every (f, y).

    When H is biseparating and both codes separate points, are pointwise
    dense and controllable, also checks that h is a bijection, that every
    weight is an automorphism, and that the decomposition of H^-1 inverts
    this one. With ``oracle=True`` the support map is cross-checked against
    brute-force subset enumeration.
    """
    h = support_map(hom)
    weights = tuple(weight_at(hom, h, y) for y in range(hom.target.n_points))
    verify_representation(hom, h, weights)

    reports = None
    if oracle:
        reports = []
        for y in range(hom.target.n_points):
            rep = minimal_supports_oracle(point_functional(hom, y))
            if rep.singletons != [h[y]]:
                raise ConsistencyError(
                    f"oracle singleton supports {rep.singletons} at y={y} disagree with h(y)={h[y]}"
                )
            reports.append(rep)
        reports = tuple(reports)

    if not check_theorem:
        return Decomposition(hom, h, weights, support_reports=reports)

    hyp_a = check_code(hom.source, cap)
    hyp_b = check_code(hom.target, cap)
    bisep = is_biseparating(hom) if hom.is_bijective() else None
    d = Decomposition(hom, h, weights, hyp_a, hyp_b, bisep, support_reports=reports)
    if not d.theorem_applies:
        return d

    if not d.is_bijective_support():
        raise ConsistencyError(f"support map {h} is not a bijection")
    for y, w in enumerate(weights):
        if not w.is_bijective():
            raise ConsistencyError(f"weight at {hom.target.space.labels[y]} is not an automorphism")
    inv = decompose(invert(hom), cap, oracle=oracle, check_theorem=False)
    _check_inverse(d, inv)
    return Decomposition(hom, h, weights, hyp_a, hyp_b, bisep, inv, True, reports)


# --- equivalence ----------------------------------------------------------------


def _zero_pattern_counter(rows, coords, e) -> Counter:
    return Counter(tuple(r[c] == e for c in coords) for r in rows)


def decide_equivalence(
    a: FunctionGroup, b: FunctionGroup, budget: int = DEFAULT_SEARCH_CAP
) -> Decomposition:
    """Find a point bijection h and automorphisms w with {y -> w[y](f(h(y)))} = B.

    Candidates are visited in lexicographic order of (h, w) with w indexing
    the automorphism list; the first witness is returned. Pruning only
    removes branches that cannot extend to a witness, so the answer matches
    the unpruned scan. ``budget`` caps the number of search nodes.
    Raises NotEquivalent when no witness exists.
    """
    if a.group != b.group:
        raise CodeMismatch("codes take values in different groups")
    n = a.n_points
    if b.n_points != n:
        raise NotEquivalent(f"point counts differ ({n} vs {b.n_points})")
    if len(a) != len(b):
        raise NotEquivalent(f"code sizes differ ({len(a)} vs {len(b)})")
    if sorted(m.bit_count() for m in a.coz_masks) != sorted(m.bit_count() for m in b.coz_masks):
        raise NotEquivalent("cozero-size distributions differ")

    group = a.group
    e = group.identity
    auts = enumerate_automorphisms(group)
    img_a = [evaluation_image(a, x).member_set for x in range(n)]
    img_b = [evaluation_image(b, y).member_set for y in range(n)]
    # weights[y][x]: automorphism indices carrying the image at x onto the image at y
    allowed = [
        [[k for k, w in enumerate(auts) if {w(g) for g in img_a[x]} == img_b[y]] for x in range(n)]
        for y in range(n)
    ]
    b_zero = [_zero_pattern_counter(b.elements, range(k + 1), e) for k in range(n)]
    b_proj = [Counter(tuple(r[: k + 1]) for r in b.elements) for k in range(n)]
    tables = [w.as_dict for w in auts]

    nodes = 0

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(budget)

    def assign_weights(h, y, partial):
        if y == n:
            return []
        x = h[y]
        for k in allowed[y][x]:
            tick()
            w = tables[k]
            ext = [p + (w[r[x]],) for p, r in zip(partial, a.elements)]
            if Counter(ext) != b_proj[y]:
                continue
            rest = assign_weights(h, y + 1, ext)
            if rest is not None:
                return [k] + rest
        return None

    def assign_points(h, used):
        y = len(h)
        if y == n:
            ws = assign_weights(h, 0, [()] * len(a))
            return (tuple(h), ws) if ws is not None else None
        for x in range(n):
            if x in used or not allowed[y][x]:
                continue
            tick()
            cand = h + [x]
            if _zero_pattern_counter(a.elements, cand, e) != b_zero[y]:
                continue
            found = assign_points(cand, used | {x})
            if found is not None:
                return found
        return None

    found = assign_points([], frozenset())
    if found is None:
        raise NotEquivalent("no point bijection and automorphism weights carry one code onto the other")
    h, ks = found
    weights = tuple(auts[k] for k in ks)
    hom = weighted_composition(a, b, h, weights)
    verify_representation(hom, h, weights)
    return Decomposition(hom, h, weights)


# --- proposition checks -----------------------------------------------------------


@dataclass(frozen=True)
class PropositionResult:
    name: str
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""


@dataclass(frozen=True)
class PropositionReport:
    results: tuple[PropositionResult, ...]

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def __getitem__(self, name: str) -> PropositionResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def failures(self) -> list[PropositionResult]:
        return [r for r in self.results if r.status == "fail"]


def _support_table(phi: PointFunctional) -> list[bool]:
    n = phi.source.n_points
    table = [True] * (1 << n)
    for z, live in zip(phi.source.zero_masks, phi.nonnull):
        if not live:
            continue
        # every subset of Z(f) fails to be a support
        sub = z
        while True:
            table[sub] = False
            if sub == 0:
                break
            sub = (sub - 1) & z
    return table


def check_paper_propositions(hom: CodeHom, cap: int = DEFAULT_CLOSURE_CAP) -> PropositionReport:
    """Exhaustively test the structural facts about supports and the support map.

    Items whose hypotheses do not hold for this instance are reported as
    skipped. Requires a separating H whose support map exists.
    """
    h = support_map(hom)
    src, tgt = hom.source, hom.target
    n, m = src.n_points, tgt.n_points
    full = src.space.full_mask
    xl, yl = src.space.labels, tgt.space.labels
    hyp_a = check_code(src, cap)
    standing = bool(hyp_a.separates_points and hyp_a.controllable)
    out: list[PropositionResult] = []

    def fmt(mask):
        return "{" + ",".join(xl[i] for i in range(n) if (mask >> i) & 1) + "}"

    def record(name, failure, gated=True):
        if not gated:
            out.append(PropositionResult(name, "skipped", "hypotheses not met"))
        elif failure is None:
            out.append(PropositionResult(name, "pass"))
        else:
            out.append(PropositionResult(name, "fail", failure))

    tables = []
    phis = []
    for y in range(m):
        phi = point_functional(hom, y)
        phis.append(phi)
        tables.append(_support_table(phi))

    def first(gen):
        return next(gen, None)

    record("support.whole_space", first(f"y={yl[y]}" for y in range(m) if not tables[y][full]))
    record("support.nonempty", first(f"y={yl[y]}" for y in range(m) if tables[y][0]))
    record(
        "support.upward_closed",
        first(
            f"y={yl[y]} S={fmt(s)} x={xl[x]}"
            for y in range(m)
            for s in range(1 << n)
            if tables[y][s]
            for x in range(n)
            if not tables[y][s | (1 << x)]
        ),
    )

    def restriction_failure():
        for y, phi in enumerate(phis):
            for s in range(1 << n):
                if not tables[y][s]:
                    continue
                pts = [x for x in range(n) if (s >> x) & 1]
                seen: dict[tuple, int] = {}
                for i, vals in enumerate(src.elements):
                    key = tuple(vals[x] for x in pts)
                    prev = seen.setdefault(key, phi.values[i])
                    if prev != phi.values[i]:
                        return f"y={yl[y]} S={fmt(s)} f={src.format_element(i)}"
        return None

    record("support.equal_restriction", restriction_failure())
    # supports are upward closed, so disjoint supports exist iff some S and X\S both are
    record(
        "support.pairwise_intersecting",
        first(
            f"y={yl[y]} S={fmt(s)} T={fmt(full ^ s)}"
            for y in range(m)
            for s in range(1 << n)
            if tables[y][s] and tables[y][full ^ s]
        ),
        standing,
    )
    record(
        "support.singleton_minimum",
        first(
            f"y={yl[y]} minimal={[str(p) for p in rep.minimal_supports]}"
            for y, rep in ((y, minimal_supports_oracle(phis[y])) for y in range(m))
            if [p.mask for p in rep.minimal_supports] != [1 << h[y]]
        ),
        standing,
    )

    def zero_preimage_failure():
        for s in range(1, full):
            pre = sum(1 << y for y in range(m) if (s >> h[y]) & 1)
            for i, z in enumerate(src.zero_masks):
                if s & ~z == 0 and pre & hom.image_coz_masks[i]:
                    return f"A={fmt(s)} f={src.format_element(i)}"
        return None

    record("support_map.zero_preimage", zero_preimage_failure(), standing)
    record(
        "support_map.cozero_image",
        first(
            f"f={src.format_element(i)} y={yl[y]}"
            for i, c in enumerate(hom.image_coz_masks)
            for y in range(m)
            if (c >> y) & 1 and not (src.coz_masks[i] >> h[y]) & 1
        ),
    )
    record(
        "support_map.onto",
        None if set(h) == set(range(n)) else f"image={fmt(sum(1 << x for x in set(h)))}",
        standing and hom.is_injective(),
    )
    bij_gate = False
    if standing and hom.is_bijective():
        hyp_b = check_code(tgt, cap)
        bij_gate = bool(hyp_b.separates_points and hyp_b.controllable and is_biseparating(hom))
    record(
        "support_map.bijective",
        None if sorted(h) == list(range(n)) and m == n else f"h={[xl[x] for x in h]}",
        bij_gate,
    )
    return PropositionReport(tuple(out))
