from fractions import Fraction

import mpmath
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from diffconj.series import TruncatedSeries

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)
nonzero_rationals = rationals.filter(lambda q: q != 0)


@st.composite
def series(draw, order=None, multiplier=None, min_order=1, max_order=8):
    n = order if order is not None else draw(st.integers(min_order, max_order))
    head = multiplier if multiplier is not None else draw(nonzero_rationals)
    tail = draw(st.lists(rationals, min_size=n - 1, max_size=n - 1))
    return TruncatedSeries([Fraction(head)] + tail, n)


@st.composite
def series_pair(draw, max_order=8):
    n = draw(st.integers(1, max_order))
    return draw(series(order=n)), draw(series(order=n))


@pytest.fixture(autouse=True)
def _working_precision():
    with mpmath.workdps(50):
        yield
