from fractions import Fraction

import pytest
from hypothesis import strategies as st

from abelsweep import PrecisionConfig


@pytest.fixture
def exact():
    return PrecisionConfig("exact")


@pytest.fixture
def bigfloat():
    return PrecisionConfig("bigfloat", bits=128, guard_bits=64)


def small_rationals(max_num=6, max_den=4):
    return st.builds(
        Fraction,
        st.integers(min_value=-max_num, max_value=max_num),
        st.integers(min_value=1, max_value=max_den),
    )


def rational_coeff_lists(min_size=1, max_size=6):
    return st.lists(small_rationals(), min_size=min_size, max_size=max_size)
