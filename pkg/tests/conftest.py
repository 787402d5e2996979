import pytest

from foldkit.cartan import CartanDatum
from foldkit.quiver import parse_quiver

A3_FLIP = """\
vertex 1 2 3
edge e1 1 2
edge e2 2 3
aut (1 3)
"""

A5_FLIP = """\
vertex 1 2 3 4 5
edge e1 1 2
edge e2 2 3
edge e3 3 4
edge e4 4 5
aut (1 5)(2 4)
"""

D4_TRIALITY = """\
vertex c l1 l2 l3
edge e1 c l1
edge e2 c l2
edge e3 c l3
aut (l1 l2 l3)
"""

CYCLE4_ROTATION = """\
vertex 1 2 3 4
edge e1 1 2
edge e2 2 3
edge e3 3 4
edge e4 4 1
aut (1 3)(2 4)
affine_node 1
"""

CYCLE4_REFLECTION = """\
vertex 1 2 3 4
edge e1 1 2
edge e2 2 3
edge e3 3 4
edge e4 4 1
aut (1 3)
"""

A2_PATH = """\
vertex 1 2
edge e1 1 2
"""

AFFINE_SL2 = """\
vertex 0 1
edge e1 0 1
edge e2 1 0
affine_node 0
"""


def datum(form, labels=None):
    n = len(form)
    labels = labels or tuple(str(i + 1) for i in range(n))
    return CartanDatum(tuple(labels), tuple(tuple(r) for r in form)).check()


@pytest.fixture
def a3_flip():
    return parse_quiver(A3_FLIP)


@pytest.fixture
def a5_flip():
    return parse_quiver(A5_FLIP)


@pytest.fixture
def d4_triality():
    return parse_quiver(D4_TRIALITY)


@pytest.fixture
def cycle4_rotation():
    return parse_quiver(CYCLE4_ROTATION)


@pytest.fixture
def cycle4_reflection():
    return parse_quiver(CYCLE4_REFLECTION)


@pytest.fixture
def a2_path():
    return parse_quiver(A2_PATH)
