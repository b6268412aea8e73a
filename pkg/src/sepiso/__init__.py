"""Separating homomorphisms between finite group codes.

Given codes A (G-valued functions on a finite point set X) and B (on Y) and
a homomorphism H: A -> B, sepiso checks the structural hypotheses on the
codes, decides whether H is separating or biseparating, recovers the
support map h: Y -> X and weights w[y] with Hf(y) = w[y](f(h(y))), and
decides equivalence of two codes by exhaustive search.
"""

from sepiso.codes import (
    FunctionGroup,
    GFunction,
    Verdict,
    check_code,
    controllable,
    cozero_set,
    enumerate_codes,
    evaluation_image,
    full_code,
    generate_code,
    pointwise_dense,
    separates_points,
    strongly_separates_points,
    zero_set,
)
from sepiso.groups import (
    FiniteGroup,
    GroupMap,
    Subgroup,
    cyclic_group,
    direct_product,
    enumerate_automorphisms,
    enumerate_endomorphisms,
    subgroup_closure,
    validate_group,
)
from sepiso.homs import (
    CodeHom,
    PointFunctional,
    build_hom,
    invert,
    is_biseparating,
    is_separating,
    point_functional,
    weighted_composition,
)
from sepiso.kernels import BACKEND
from sepiso.representation import (
    Decomposition,
    SupportReport,
    check_paper_propositions,
    decide_equivalence,
    decompose,
    is_support,
    minimal_supports_oracle,
    support_map,
    weight_at,
)
from sepiso.spaces import PointSet, PointSpace, SetFamily, separate_disjoint, sigma_closure

__version__ = "0.1.0"
