import itertools

import hypothesis.strategies as st
import pytest
from hypothesis import given

import oracles
from sepiso.errors import GroupError, MissingInverse, NoIdentity, NotAssociative, NotClosed
from sepiso.groups import (
    cyclic_group,
    direct_product,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    generating_set,
    identity_map,
    make_group_map,
    subgroup_closure,
    symmetric_group,
    trivial_group,
    validate_group,
)

Z2 = cyclic_group(2)
KLEIN = direct_product(Z2, Z2)
GROUPS = [trivial_group(), Z2, cyclic_group(3), cyclic_group(4), KLEIN, cyclic_group(6), symmetric_group(3)]


def test_validate_z3_from_labels():
    g = validate_group(["e", "a", "b"], [["e", "a", "b"], ["a", "b", "e"], ["b", "e", "a"]])
    assert g.order == 3
    assert g.identity == 0
    assert g.inverse == (0, 2, 1)
    assert g.mul(1, 1) == 2


def test_validate_accepts_indices():
    g = validate_group(["e", "a"], [[0, 1], [1, 0]])
    assert g == Z2


def test_not_closed():
    with pytest.raises(NotClosed) as exc:
        validate_group(["e", "a"], [["e", "a"], ["a", "z"]])
    assert (exc.value.row, exc.value.col) == (1, 1)


def test_no_identity():
    with pytest.raises(NoIdentity):
        validate_group(["p", "q"], [["q", "q"], ["q", "q"]])


def test_missing_inverse_reported_before_associativity():
    with pytest.raises(MissingInverse) as exc:
        validate_group(["e", "a"], [["e", "a"], ["a", "a"]])
    assert exc.value.index == 1


def test_not_associative():
    # a Latin square with identity that is not a group
    labels = ["e", "a", "b", "c", "d"]
    rows = [
        "e a b c d",
        "a e c d b",
        "b d e a c",
        "c b d e a",
        "d c a b e",
    ]
    with pytest.raises(NotAssociative):
        validate_group(labels, [r.split() for r in rows])


def test_group_errors_are_value_errors():
    assert issubclass(GroupError, ValueError)


@pytest.mark.parametrize(
    "group, brute",
    [
        (cyclic_group(2), oracles.z_n(2)),
        (cyclic_group(3), oracles.z_n(3)),
        (cyclic_group(4), oracles.z_n(4)),
        (KLEIN, oracles.klein()),
        (symmetric_group(3), oracles.s3()),
    ],
)
def test_endomorphism_counts_match_brute_force(group, brute):
    assert len(enumerate_endomorphisms(group)) == len(oracles.brute_endomorphisms(brute))
    assert len(enumerate_automorphisms(group)) == len(oracles.brute_automorphisms(brute))


def test_known_counts():
    assert [len(enumerate_endomorphisms(cyclic_group(n))) for n in (2, 3, 4)] == [2, 3, 4]
    assert len(enumerate_endomorphisms(KLEIN)) == 16
    assert len(enumerate_automorphisms(KLEIN)) == 6
    assert len(enumerate_endomorphisms(symmetric_group(3))) == 10
    assert len(enumerate_automorphisms(symmetric_group(3))) == 6


def test_z3_endomorphisms_sorted():
    imgs = [m.full_images() for m in enumerate_endomorphisms(cyclic_group(3))]
    assert imgs == [(0, 0, 0), (0, 1, 2), (0, 2, 1)]


def test_make_group_map_rejects_non_hom():
    with pytest.raises(GroupError):
        make_group_map(cyclic_group(3), [0, 1, 2], [0, 1, 1])


def test_partial_map_kind():
    g = cyclic_group(4)
    m = make_group_map(g, [2, 0], [2, 0])
    assert m.kind == "partial-homomorphism"
    assert m.domain == (0, 2)


def test_subgroup_closure_order():
    g = cyclic_group(6)
    s = subgroup_closure(g, [2])
    assert s.members == (0, 2, 4)
    assert not s.is_whole()
    assert subgroup_closure(g, [1]).is_whole()


@pytest.mark.parametrize("group", GROUPS, ids=repr)
def test_generating_set_generates(group):
    assert subgroup_closure(group, generating_set(group)).is_whole()


@pytest.mark.parametrize("group", GROUPS, ids=repr)
def test_every_endomorphism_preserves_products(group):
    n = group.order
    for m in enumerate_endomorphisms(group):
        for a, b in itertools.product(range(n), repeat=2):
            assert m(group.mul(a, b)) == group.mul(m(a), m(b))


@pytest.mark.parametrize("group", GROUPS, ids=repr)
def test_automorphisms_form_a_group(group):
    auts = enumerate_automorphisms(group)
    keys = {a.full_images() for a in auts}
    assert identity_map(group).full_images() in keys
    for a, b in itertools.product(auts, repeat=2):
        assert a.compose(b).full_images() in keys


@given(st.sampled_from(GROUPS), st.data())
def test_group_axioms(group, data):
    n = group.order
    a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert group.mul(group.mul(a, b), c) == group.mul(a, group.mul(b, c))
    assert group.mul(a, group.identity) == a == group.mul(group.identity, a)
    assert group.mul(a, group.inv(a)) == group.identity


@given(st.sampled_from(GROUPS), st.data())
def test_closure_is_a_subgroup(group, data):
    seeds = data.draw(st.lists(st.integers(0, group.order - 1), max_size=3))
    s = subgroup_closure(group, seeds)
    members = s.member_set
    assert group.identity in members
    assert set(seeds) <= members
    assert all(group.mul(a, b) in members for a in members for b in members)
    assert group.order % len(s) == 0


def test_direct_product_labels():
    assert KLEIN.labels == ("(e,e)", "(e,a)", "(a,e)", "(a,a)")
    assert all(KLEIN.element_order(g) <= 2 for g in range(4))
