import hypothesis.strategies as st
import pytest
from hypothesis import given

import oracles
from sepiso.errors import ClosureOverflow, NotSeparable, PreconditionViolated
from sepiso.spaces import PointSpace, SetFamily, family_from_sets, separate_disjoint, sigma_closure

X3 = PointSpace.of_size(3)


def as_sets(fam):
    return {frozenset(s.members) for s in fam.sets}


def test_pairs_of_three_close_to_eight_sets():
    fam = family_from_sets(X3, [[0, 1], [1, 2], [0, 2]])
    closed = sigma_closure(fam)
    assert len(closed) == 8
    assert X3.empty() in closed and X3.whole() in closed


def test_empty_and_whole_only_if_generated():
    fam = family_from_sets(X3, [[0], [1]])
    closed = sigma_closure(fam)
    assert as_sets(closed) == {frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})}
    chain = sigma_closure(family_from_sets(X3, [[0], [0, 1]]))
    assert len(chain) == 2


def test_closure_sorted_by_size_then_mask():
    closed = sigma_closure(family_from_sets(X3, [[0, 1], [1, 2], [0, 2]]))
    assert [s.mask for s in closed.sets] == [0, 1, 2, 4, 3, 5, 6, 7]


def test_closure_overflow():
    fam = family_from_sets(X3, [[0, 1], [1, 2], [0, 2]])
    with pytest.raises(ClosureOverflow):
        sigma_closure(fam, cap=5)


def test_cap_below_family_size():
    with pytest.raises(PreconditionViolated):
        sigma_closure(family_from_sets(X3, [[0], [1]]), cap=1)


def test_separate_disjoint():
    fam = family_from_sets(X3, [[0], [1, 2]])
    da, db = separate_disjoint(X3.subset([0]), X3.subset([2]), fam)
    assert da.members == (0,) and db.members == (1, 2)


def test_separate_disjoint_errors():
    fam = family_from_sets(X3, [[0, 1], [1, 2]])
    with pytest.raises(PreconditionViolated):
        separate_disjoint(X3.subset([0]), X3.subset([0, 1]), fam)
    with pytest.raises(PreconditionViolated):
        separate_disjoint(X3.empty(), X3.subset([1]), fam)
    with pytest.raises(NotSeparable):
        separate_disjoint(X3.subset([0]), X3.subset([2]), fam)


def test_point_set_ops():
    a, b = X3.subset([0, 1]), X3.subset([1, 2])
    assert (a & b).members == (1,)
    assert (a | b) == X3.whole()
    assert a.complement().members == (2,)
    assert str(a) == "{x0,x1}"
    assert X3.subset([1]).issubset(a) and not a.isdisjoint(b)


families = st.integers(1, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=5))
)


@given(families)
def test_closure_matches_oracle(data):
    n, masks = data
    space = PointSpace.of_size(n)
    closed = sigma_closure(SetFamily.of(space, masks))
    to_set = lambda m: frozenset(i for i in range(n) if (m >> i) & 1)  # noqa: E731
    assert as_sets(closed) == oracles.sigma({to_set(m) for m in masks})


@given(families)
def test_closure_is_closed_and_idempotent(data):
    n, masks = data
    space = PointSpace.of_size(n)
    closed = sigma_closure(SetFamily.of(space, masks))
    ms = closed.mask_set
    assert set(masks) <= ms
    assert all(a | b in ms and a & b in ms for a in ms for b in ms)
    assert sigma_closure(closed).mask_set == ms
