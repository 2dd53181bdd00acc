import os
import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from iet import Interval, SurdReal, iet_new  # noqa: E402

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")


def S(text) -> SurdReal:
    if isinstance(text, SurdReal):
        return text
    return SurdReal(text) if isinstance(text, str) else SurdReal(Fraction(text))


@pytest.fixture
def base10():
    return Interval(S(0), S(10))


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 8, 12])


@st.composite
def surds(draw, max_terms=3):
    terms = draw(st.dictionaries(radicands, rationals, max_size=max_terms))
    return SurdReal(terms)


@st.composite
def positive_surds(draw):
    x = draw(surds())
    if x.sign() == 0:
        return S(1)
    return x if x.sign() > 0 else -x


@st.composite
def iets(draw, base=None, max_k=6):
    """Random maps on ``base`` (default ``[0, 6 + sqrt(2))``) with surd cuts."""
    if base is None:
        base = Interval(S(0), S("6 + sqrt(2)"))
    k = draw(st.integers(1, max_k))
    # cut points lo + width*u + sqrt(2)*v/16 kept strictly inside
    cuts = set()
    for _ in range(k - 1):
        u = draw(st.fractions(min_value=Fraction(1, 32), max_value=Fraction(31, 32), max_denominator=32))
        v = draw(st.integers(-3, 3))
        x = base.lo + base.width * u + SurdReal.sqrt(2) * Fraction(v, 16)
        if base.lo < x < base.hi:
            cuts.add(x)
    edges = [base.lo] + sorted(cuts) + [base.hi]
    lengths = [b - a for a, b in zip(edges, edges[1:])]
    perm = draw(st.permutations(list(range(1, len(lengths) + 1))))
    return iet_new(base, lengths, perm)
