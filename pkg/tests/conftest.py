from fractions import Fraction

import pytest
import sympy
from hypothesis import settings
from hypothesis import strategies as st

from reldyn.quantity import Quantity

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_radicands = st.integers(min_value=0, max_value=30)


@st.composite
def quantities(draw, depth=2):
    """Sums of rational multiples of square roots, sometimes nested."""
    q = Quantity(draw(rationals))
    for _ in range(draw(st.integers(0, depth))):
        c = Quantity(draw(rationals))
        r = Quantity(draw(small_radicands))
        if draw(st.booleans()):
            r = r + Quantity(draw(st.integers(0, 5))).sqrt()
        q = q + c * r.sqrt()
    return q


def nonneg(q):
    return q if q.sign() >= 0 else -q


def to_sympy(q: Quantity):
    """Independent oracle: re-parse the literal with sympy."""
    return sympy.sympify(q.literal().replace("^", "**"))


def frac(x) -> Fraction:
    return Fraction(x)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
