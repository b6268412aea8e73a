import importlib
import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from sepiso import _pykernels as py
from sepiso import kernels
from sepiso.codes import full_code, generate_code
from sepiso.spaces import PointSpace
from strategies import Z2, Z3, codes

ck = pytest.importorskip("sepiso._ckernels")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")
    assert kernels.BACKEND == "cython"


mask_lists = st.integers(1, 8).flatmap(
    lambda n: st.lists(st.integers(0, (1 << n) - 1), max_size=6)
)


@given(mask_lists, st.integers(1, 300))
def test_closure_parity(masks, cap):
    out_py, ov_py = py.sigma_closure_masks(masks, cap)
    out_c, ov_c = ck.sigma_closure_masks(masks, cap)
    assert ov_py == ov_c
    if not ov_py:
        assert sorted(out_py) == sorted(out_c)
    else:
        assert len(out_py) == len(out_c) == cap + 1


@settings(max_examples=80, deadline=None)
@given(codes())
def test_code_kernels_parity(code):
    args = (code.flat_values, len(code), code.n_points, code.group.flat_table, code.group.order)
    assert py.product_table(*args) == ck.product_table(*args)
    sz = list(code.sigma_zero().masks)
    sc = list(code.sigma_cozero().masks)
    cargs = (code.flat_values, len(code), code.n_points, code.coz_masks, sz, sc)
    assert py.controllable_violation(*cargs) == ck.controllable_violation(*cargs)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 63), max_size=10), st.lists(st.integers(0, 63), max_size=10))
def test_separating_parity(a, b):
    b = (b + a)[: len(a)]
    assert py.separating_violation(a, b) == ck.separating_violation(a, b)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6), st.data())
def test_singleton_parity(n, data):
    zm = data.draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=10))
    nn = data.draw(st.lists(st.booleans(), min_size=len(zm), max_size=len(zm)))
    assert py.singleton_supports(zm, nn, n) == ck.singleton_supports(zm, nn, n)


def test_hom_law_parity():
    rng = random.Random(7)
    code = full_code(PointSpace.of_size(2), Z3)
    g = code.group
    for _ in range(50):
        images = [rng.randrange(g.order) for _ in range(g.order)]
        dom = list(range(g.order))
        args = (dom, g.flat_table, g.order, images, g.flat_table, g.order)
        assert py.hom_law_violation(*args) == ck.hom_law_violation(*args)


def test_wide_masks_fall_back():
    # 70 points is past the 64-bit fast path
    space = PointSpace.of_size(70)
    code = generate_code(space, Z2, [[1] * 70, [1] + [0] * 69])
    sz = list(code.sigma_zero().masks)
    sc = list(code.sigma_cozero().masks)
    cargs = (code.flat_values, len(code), code.n_points, code.coz_masks, sz, sc)
    assert py.controllable_violation(*cargs) == ck.controllable_violation(*cargs)
    assert py.separating_violation(code.coz_masks, code.coz_masks) == ck.separating_violation(
        code.coz_masks, code.coz_masks
    )


def test_fallback_selected_without_extension(monkeypatch):
    monkeypatch.setitem(sys.modules, "sepiso._ckernels", None)
    try:
        reloaded = importlib.reload(kernels)
        assert reloaded.BACKEND == "python"
        assert reloaded.controllable_violation is py.controllable_violation
    finally:
        monkeypatch.undo()
        importlib.reload(kernels)
    assert kernels.BACKEND == "cython"


def test_env_forces_fallback():
    code = "import sepiso; print(sepiso.BACKEND)"
    env = {**os.environ, "SEPISO_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True).stdout
    assert out.strip() == "python"


def test_pipeline_on_python_backend(monkeypatch):
    from sepiso.codes import check_code, code_from_labels
    from sepiso.representation import decompose
    from sepiso.homs import identity_hom

    for name in ("sigma_closure_masks", "hom_law_violation", "product_table", "separating_violation",
                 "singleton_supports", "controllable_violation"):
        monkeypatch.setattr(kernels, name, getattr(py, name))
    space = PointSpace.of_size(3)
    even = code_from_labels(space, Z2, ["a a e", "a e a"])
    hyp = check_code(even)
    assert hyp.separates_points and not hyp.controllable
    d = decompose(identity_hom(full_code(space, Z3)))
    assert d.support_map == (0, 1, 2) and d.inverse_consistent
