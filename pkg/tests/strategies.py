"""Hypothesis strategies shared across the test modules."""

import numpy as np
from hypothesis import strategies as st

finite = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)
vec3 = st.lists(finite, min_size=3, max_size=3).map(np.array)
seeds = st.integers(0, 2 ** 32 - 1)


@st.composite
def unit3(draw):
    v = draw(vec3)
    n = np.linalg.norm(v)
    if n < 1e-3:
        v, n = np.array([0.0, 0.0, 1.0]), 1.0
    return v / n


def rng_from(seed):
    return np.random.default_rng(seed)
