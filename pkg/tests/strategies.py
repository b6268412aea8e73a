"""Hypothesis strategies shared by the test modules."""

import hypothesis.strategies as st

from sepiso.codes import generate_code
from sepiso.groups import cyclic_group, direct_product
from sepiso.spaces import PointSpace

Z2 = cyclic_group(2)
Z3 = cyclic_group(3)
Z4 = cyclic_group(4)
KLEIN = direct_product(Z2, Z2)
SMALL_GROUPS = [Z2, Z3, Z4, KLEIN]


@st.composite
def codes(draw, groups=SMALL_GROUPS, max_points=3, max_gens=3):
    group = draw(st.sampled_from(groups))
    n = draw(st.integers(1, max_points))
    row = st.tuples(*[st.integers(0, group.order - 1)] * n)
    gens = draw(st.lists(row, max_size=max_gens))
    return generate_code(PointSpace.of_size(n), group, gens)


def as_oracle_code(code):
    """(elements, mul, e) over plain ints plus the code as a set of tuples."""
    g = code.group
    mul = {(a, b): g.mul(a, b) for a in range(g.order) for b in range(g.order)}
    return (list(range(g.order)), mul, g.identity), set(code.elements)
