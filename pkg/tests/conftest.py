import random

import pytest
from hypothesis import strategies as st

from plumbcalc import build_tree
from plumbcalc.generate import random_edges


@st.composite
def trees(draw, max_vertices=8, lo=-5, hi=5):
    n = draw(st.integers(1, max_vertices))
    seed = draw(st.integers(0, 2**32 - 1))
    edges = random_edges(n, random.Random(seed))
    weights = {v: draw(st.integers(lo, hi)) for v in range(1, n + 1)}
    return build_tree(weights, edges)


@pytest.fixture
def path50():
    from plumbcalc import path
    return path([5, 0])
