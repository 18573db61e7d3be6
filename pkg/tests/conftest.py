import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from dquint import param

SEED = 20240611


@pytest.fixture
def rng():
    return random.Random(SEED)


def nonzero_fractions(max_den=10**6):
    return st.fractions(max_denominator=max_den).filter(lambda q: q != 0)


def rt_points(rng, n, height=40):
    """n random (r, t) with s = s_of(r, t) defined and nondegenerate."""
    from dquint.selftest import random_rt

    return [random_rt(rng, height) for _ in range(n)]


M_SET = {Fraction(x * x, 480480) for x in (225, 2548, 286, 1408, 819)}
D3_GEN = [Fraction(-5632, 1365), Fraction(-4459, 330), Fraction(-143, 840), Fraction(-3375, 32032), Fraction(-2457, 1760)]
