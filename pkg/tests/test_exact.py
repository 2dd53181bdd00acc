import pickle
import random
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from conftest import S, rationals, surds
from hypothesis import given
from hypothesis import strategies as st

from iet import errors
from iet.exact import (
    ONE,
    ZERO,
    SurdReal,
    format_surd,
    is_squarefree,
    parse_surd,
    squarefree_decomposition,
    surd,
    surd_add,
    surd_approx,
    surd_cmp,
    surd_max,
    surd_min,
    surd_scale,
    surd_sign,
)


def decimal_value(x: SurdReal, digits: int = 80) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = digits
        total = Decimal(0)
        for d, q in x.terms.items():
            total += Decimal(q.numerator) / Decimal(q.denominator) * Decimal(d).sqrt()
        return total


# examples ------------------------------------------------------------------

def test_add_cancels_to_rational():
    assert surd_add(S("sqrt(2)"), S("1 - sqrt(2)")) == ONE


def test_add_zero_is_neutral():
    x = S("3/4 - 2*sqrt(5)")
    assert surd_add(ZERO, x) == x


def test_add_like_terms():
    assert surd_add(S("1/2*sqrt(3)"), S("1/3*sqrt(3)")) == S("5/6*sqrt(3)")


def test_scale_examples():
    assert surd_scale(2, S("sqrt(2)")) == S("2*sqrt(2)")
    assert surd_scale(0, S("1 + sqrt(2)")) == ZERO
    assert surd_scale(Fraction(1, 3), S("3 + 6*sqrt(5)")) == S("1 + 2*sqrt(5)")


def test_sign_examples():
    assert surd_sign(ZERO) == 0
    assert surd_sign(S("sqrt(2) - 1")) == 1
    assert surd_sign(S("3 - 2*sqrt(2)")) == 1
    assert surd_sign(S("2*sqrt(2) - 3")) == -1


def test_sign_of_tiny_difference():
    # (1 + sqrt(2))^-20 as an exact element of Z[sqrt(2)], about 2e-8
    a, b = 1, 0
    for _ in range(20):
        a, b = a * -1 + b * 2, a - b  # multiply by sqrt(2) - 1
    x = SurdReal({1: a, 2: b})
    assert x.sign() == (1 if decimal_value(x) > 0 else -1)
    assert abs(decimal_value(x)) < Decimal("1e-7")


def test_cmp_examples():
    x = S("1/7 + sqrt(11)")
    assert surd_cmp(x, x) == 0
    assert surd_cmp(ONE, S("sqrt(2)")) == -1
    assert surd_cmp(S("2*sqrt(2)"), S(3)) == -1
    assert S(3) > S("2*sqrt(2)")


def test_parse_examples():
    assert parse_surd("1/2 + 3/4*sqrt(2)").terms == {1: Fraction(1, 2), 2: Fraction(3, 4)}
    assert parse_surd("sqrt(8)").terms == {2: Fraction(2)}
    with pytest.raises(errors.ParseError):
        parse_surd("1/0")


@pytest.mark.parametrize("text", ["", "1 +", "sqrt(2", "2**sqrt(3)", "abc", "1/2/3", "+-1"])
def test_parse_rejects_malformed(text):
    with pytest.raises(errors.ParseError):
        parse_surd(text)


def test_parse_normalizes_and_merges():
    assert parse_surd("sqrt(12) - sqrt(3)") == S("sqrt(3)")
    assert parse_surd("2*sqrt(1) + 1") == S(3)
    assert parse_surd("sqrt(0) + 1") == ONE
    assert parse_surd(" - 1 / 2 ") == S(Fraction(-1, 2))
    assert parse_surd("sqrt(2) - sqrt(2)") == ZERO


def test_format_is_canonical():
    assert format_surd(S("sqrt(3) + 1/2 - sqrt(2)")) == "1/2 - sqrt(2) + sqrt(3)"
    assert format_surd(S("-sqrt(2)")) == "-sqrt(2)"
    assert format_surd(ZERO) == "0"
    assert format_surd(S("-3/4*sqrt(6) + 2")) == "2 - 3/4*sqrt(6)"


def test_squarefree_decomposition():
    assert squarefree_decomposition(72) == (6, 2)
    assert squarefree_decomposition(1) == (1, 1)
    assert squarefree_decomposition(97) == (1, 97)
    assert is_squarefree(30) and not is_squarefree(18)


def test_no_surd_products():
    with pytest.raises(TypeError):
        S("sqrt(2)") * S("sqrt(2)")


def test_rational_hash_matches_fraction():
    assert hash(S("1/2")) == hash(Fraction(1, 2))
    assert S("1/2") == Fraction(1, 2)
    assert {S(3): "x"}[S("3")] == "x"


def test_pickle_and_coercion():
    x = S("1/3 - 5*sqrt(7)")
    assert pickle.loads(pickle.dumps(x)) == x
    assert surd("sqrt(7)") == SurdReal.sqrt(7)
    assert surd(Fraction(2, 3)) == S("2/3")
    assert surd_min(S(2), S("sqrt(3)"), S(5)) == S("sqrt(3)")
    assert surd_max(S(2), S("sqrt(3)")) == S(2)


def test_approx_error_bound():
    x = S("1/3 - 5*sqrt(7) + 2*sqrt(11)")
    err = abs(Decimal(surd_approx(x, 40).numerator) / Decimal(surd_approx(x, 40).denominator) - decimal_value(x))
    assert err < Decimal(8) / Decimal(2**40)


def test_parse_format_round_trip_1000_values():
    rng = random.Random(11)
    for _ in range(1000):
        terms = {d: Fraction(rng.randint(-50, 50), rng.randint(1, 30)) for d in rng.sample([1, 2, 3, 5, 6, 7, 10, 13], rng.randint(0, 4))}
        x = SurdReal(terms)
        assert parse_surd(format_surd(x)) == x
        assert format_surd(parse_surd(format_surd(x))) == format_surd(x)


# properties -------------------------------------------------------------------

@given(surds(), surds())
def test_sign_matches_decimal_oracle(x, y):
    s = x + y
    v = decimal_value(s)
    if s.sign() == 0:
        assert not s.terms
    elif abs(v) > Decimal("1e-60"):
        assert s.sign() == (1 if v > 0 else -1)


@given(surds(), surds(), surds())
def test_add_is_associative_and_commutative(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x - x == ZERO


@given(rationals, surds(), surds())
def test_scale_distributes(q, x, y):
    assert surd_scale(q, x + y) == surd_scale(q, x) + surd_scale(q, y)


@given(surds(), surds())
def test_cmp_is_consistent_with_sign(x, y):
    c = surd_cmp(x, y)
    assert c == -surd_cmp(y, x)
    if c < 0:
        assert (y - x).sign() == 1
    assert (c == 0) == (x == y)


@given(surds(), surds(), surds())
def test_cmp_is_transitive(x, y, z):
    a, b, c = sorted([x, y, z])
    assert a <= b <= c and a <= c


@given(surds())
def test_no_zero_coefficients_and_squarefree_keys(x):
    for d, q in x.terms.items():
        assert q != 0 and is_squarefree(d)
    assert (x.sign() == 0) == (not x.terms)


@given(st.text(max_size=12))
def test_parse_never_crashes_unexpectedly(text):
    try:
        parse_surd(text)
    except errors.ParseError:
        pass
