import itertools

import pytest
from hypothesis import given, settings

import oracles
from sepiso.codes import (
    GFunction,
    check_code,
    code_from_labels,
    controllable,
    enumerate_codes,
    evaluation_image,
    full_code,
    generate_code,
    pointwise_dense,
    separates_points,
    strongly_separates_points,
    trivial_code,
)
from sepiso.errors import CodeMismatch, SizeOverflow
from sepiso.spaces import PointSpace
from strategies import KLEIN, Z2, Z3, as_oracle_code, codes

X3 = PointSpace.of_size(3)


@pytest.fixture
def even():
    return code_from_labels(X3, Z2, ["a a e", "a e a"])


@pytest.fixture
def rep():
    return code_from_labels(X3, Z2, ["a a a"])


def test_even_weight_elements_in_bfs_order(even):
    assert [even.format_element(i) for i in range(len(even))] == ["e e e", "a a e", "a e a", "e a a"]


def test_even_weight_verdicts(even):
    assert separates_points(even).holds
    ss = strongly_separates_points(even)
    assert not ss.holds and ss.witness == (0, 1)
    assert pointwise_dense(even).holds
    c = controllable(even)
    assert not c.holds
    f, d1, d2 = c.witness
    assert even.format_element(f) == "a a e"
    assert (str(d1), str(d2)) == ("{x0}", "{x1}")


def test_even_weight_witness_is_a_real_failure(even):
    brute, members = as_oracle_code(even)
    f, d1, d2 = controllable(even).witness
    failures = oracles.controllable_failures(members, 0, 3)
    assert (even.elements[f], frozenset(d1.members), frozenset(d2.members)) in failures


def test_repetition_code(rep):
    sep = separates_points(rep)
    assert not sep.holds and sep.witness == (0, 1)
    assert controllable(rep).holds
    assert pointwise_dense(rep).holds


def test_sigma_zero_of_even_weight_is_power_set(even):
    assert len(even.sigma_zero()) == 8


def test_full_code_size():
    assert len(full_code(X3, Z2)) == 8
    assert len(full_code(PointSpace.of_size(2), KLEIN)) == 16


@pytest.mark.parametrize("group", [Z2, Z3, KLEIN], ids=repr)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_full_codes_satisfy_everything(group, n):
    hyp = check_code(full_code(PointSpace.of_size(n), group))
    assert hyp.theorem_ready
    assert hyp.strongly_separates_points


def test_trivial_code_not_dense():
    v = pointwise_dense(trivial_code(X3, Z2))
    assert not v.holds and v.witness == 0


def test_size_overflow():
    with pytest.raises(SizeOverflow):
        full_code(X3, Z3, cap=10)


def test_mismatched_values():
    with pytest.raises(CodeMismatch):
        generate_code(X3, Z2, [["a", "a"]])
    with pytest.raises(CodeMismatch):
        generate_code(X3, Z2, [["a", "a", "q"]])


def test_gfunction_ops():
    f = GFunction(X3, Z3, (1, 0, 2))
    assert str(f) == "a e b"
    assert str(f * f) == "b e a"
    assert str(f.inverse()) == "b e a"
    assert f.zero_mask == 0b010 and f.coz_mask == 0b101


def test_enumerate_codes_counts():
    # subgroups of Z2^n: 2, 5, 16
    assert [len(enumerate_codes(PointSpace.of_size(n), Z2)) for n in (1, 2, 3)] == [2, 5, 16]


def test_evaluation_image():
    code = code_from_labels(PointSpace.of_size(2), Z3, ["a e"])
    assert evaluation_image(code, 0).is_whole()
    assert evaluation_image(code, 1).members == (0,)


@settings(max_examples=150, deadline=None)
@given(codes())
def test_code_is_closure(code):
    brute, members = as_oracle_code(code)
    assert members == oracles.closure_code(brute, list(code.generators), code.n_points)
    assert len(code.elements) == len(members)


@settings(max_examples=150, deadline=None)
@given(codes())
def test_hypotheses_match_oracle(code):
    brute, members = as_oracle_code(code)
    n, e = code.n_points, code.group.identity
    hyp = check_code(code)
    assert hyp.separates_points.holds == oracles.separates(members, e, n)
    assert hyp.strongly_separates_points.holds == oracles.strongly_separates(members, e, n)
    assert hyp.pointwise_dense.holds == oracles.dense(members, brute, n)
    assert hyp.controllable.holds == oracles.controllable(members, e, n)


@settings(max_examples=100, deadline=None)
@given(codes())
def test_product_table_is_group_law(code):
    for i, j in itertools.product(range(len(code)), repeat=2):
        k = code.mul_index(i, j)
        assert code.elements[k] == tuple(code.group.mul(a, b) for a, b in zip(code.elements[i], code.elements[j]))


@settings(max_examples=100, deadline=None)
@given(codes())
def test_strong_separation_implies_separation(code):
    if strongly_separates_points(code) and code.n_points > 1:
        # every point then lies in some cozero set that misses any other given point
        assert separates_points(code)


@settings(max_examples=100, deadline=None)
@given(codes())
def test_controllable_and_separating_imply_strong(code):
    if separates_points(code) and controllable(code):
        assert strongly_separates_points(code)
