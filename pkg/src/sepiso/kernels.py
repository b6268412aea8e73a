"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is used. Both expose the same functions.
Setting ``SEPISO_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import importlib
import os

from sepiso import _pykernels

try:
    if os.environ.get("SEPISO_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-Python kernels requested")
    _impl = importlib.import_module("sepiso._ckernels")
    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _pykernels
    BACKEND = "python"

sigma_closure_masks = _impl.sigma_closure_masks
hom_law_violation = _impl.hom_law_violation
product_table = _impl.product_table
separating_violation = _impl.separating_violation
singleton_supports = _impl.singleton_supports
controllable_violation = _impl.controllable_violation

__all__ = [
    "BACKEND",
    "sigma_closure_masks",
    "hom_law_violation",
    "product_table",
    "separating_violation",
    "singleton_supports",
    "controllable_violation",
]
