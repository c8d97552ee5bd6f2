from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from boolquery.core import BooleanFunction, ProductMeasure

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def functions(draw, min_n=0, max_n=4):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, (1 << (1 << n)) - 1))
    return BooleanFunction(n, bits)


@st.composite
def measures(draw, max_den=6):
    den = draw(st.integers(1, max_den))
    num = draw(st.integers(0, den))
    return ProductMeasure(Fraction(num, den))


interior_measures = st.sampled_from([ProductMeasure(Fraction(k, d)) for d in (2, 3, 4, 5) for k in range(1, d)])


@pytest.fixture
def half():
    return ProductMeasure(Fraction(1, 2))


@pytest.fixture
def third():
    return ProductMeasure(Fraction(1, 3))
