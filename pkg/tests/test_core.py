from fractions import Fraction

import pytest
from conftest import S, iets
from hypothesis import given
from hypothesis import strategies as st

from iet import errors
from iet.core import (
    Iet,
    Interval,
    RotationSpec,
    SwapSpec,
    apply,
    as_rotation,
    as_swap,
    compose,
    equals,
    from_cycles,
    from_translations,
    iet_new,
    interval_swap,
    invert,
    order,
    restricted_rotation,
    support,
    to_cycles,
)

I3 = Interval(S(0), S(3))
I4 = Interval(S(0), S(4))


def rot(base, a, b, start=0):
    return restricted_rotation(base, RotationSpec(S(a), S(b), S(start)))


def swap(base, a, x, y):
    return interval_swap(base, SwapSpec(S(a), S(x), S(y)))


def pointwise(f, x):
    """Reference evaluation straight from the description."""
    pos = f.base.lo
    for lam, t in zip(f.lengths, f.translations):
        if pos <= x < pos + lam:
            return x + t
        pos = pos + lam
    raise AssertionError("point outside base")


# construction ----------------------------------------------------------------

def test_figure_one_map_from_cycle():
    perm = from_cycles(4, [[1, 2, 4, 3]])
    assert perm == (2, 4, 1, 3)
    f = iet_new(I4, [1, 1, 1, 1], perm)
    assert f.k == 4 and f.perm == (2, 4, 1, 3)
    # block i lands at rank perm[i]
    assert [f(S(i)) for i in range(4)] == [S(1), S(3), S(0), S(2)]
    assert to_cycles(f.perm) == [[1, 2, 4, 3]]


def test_single_block_is_identity():
    f = iet_new(Interval(S(0), S(1)), [1], [1])
    assert f.is_identity() and f == Iet.identity(f.base)


def test_identity_blocks_merge():
    f = iet_new(Interval(S(0), S(2)), [1, 1], [1, 2])
    assert f.k == 1 and f.lengths == (S(2),)


def test_consecutive_ranks_merge():
    f = iet_new(I4, [1, 1, 2], [2, 3, 1])
    assert f.k == 2 and f.lengths == (S(2), S(2)) and f.perm == (2, 1)


@pytest.mark.parametrize(
    "lengths, perm, exc",
    [
        ([1, 0, 3], [1, 2, 3], errors.NonPositiveLength),
        ([1, -1, 4], [1, 2, 3], errors.NonPositiveLength),
        ([1, 1, 1], [1, 2, 3], errors.LengthSumMismatch),
        ([2, 2], [1, 1], errors.InvalidPermutation),
        ([2, 2], [1, 2, 3], errors.InvalidPermutation),
        ([2, 2], [0, 1], errors.InvalidPermutation),
    ],
)
def test_invalid_descriptions(lengths, perm, exc):
    with pytest.raises(exc):
        iet_new(I4, lengths, perm)


def test_empty_interval_rejected():
    with pytest.raises(errors.EmptyInterval):
        Interval(S(1), S(1))


def test_from_cycles_rejects_bad_cycles():
    with pytest.raises(errors.InvalidPermutation):
        from_cycles(3, [[1, 4]])
    with pytest.raises(errors.InvalidPermutation):
        from_cycles(3, [[1, 2], [2, 3]])


def test_from_translations_checks_tiling():
    f = from_translations(I3, [S(1), S(2)], [S(2), S(-1)])
    assert f == rot(I3, 1, 2)
    with pytest.raises(errors.OverlappingBlocks):
        from_translations(I3, [S(1), S(2)], [S(1), S(-1)])


# evaluation --------------------------------------------------------------

def test_apply_examples():
    assert apply(Iet.identity(I3), S("1/2")) == S("1/2")
    assert apply(rot(I3, 1, 2), S(0)) == S(2)
    assert apply(swap(I3, 1, 0, 2), S("1/2")) == S("5/2")


def test_apply_is_right_continuous():
    f = rot(I3, 1, 2)
    assert f(S(1)) == S(0)
    assert f(S(1) - S("1/1000")) == S(3) - S("1/1000")


def test_apply_outside_domain():
    with pytest.raises(errors.PointOutsideDomain):
        rot(I3, 1, 2)(S(3))
    with pytest.raises(errors.PointOutsideDomain):
        rot(I3, 1, 2)(S(-1))


# group structure ------------------------------------------------------------

def test_swap_is_involution():
    s = swap(I4, 1, 0, 2)
    assert compose(s, s).is_identity()


def test_invert_rotation_swaps_type():
    assert invert(rot(I3, 1, 2)) == rot(I3, 2, 1)
    assert invert(Iet.identity(I3)).is_identity()


def test_compose_with_identity_and_inverse():
    f = iet_new(I4, [1, 1, 1, 1], [2, 4, 1, 3])
    ident = Iet.identity(I4)
    assert compose(f, ident) == f == compose(ident, f)
    assert compose(f, invert(f)).is_identity()


def test_compose_different_bases():
    with pytest.raises(errors.BaseMismatch):
        compose(Iet.identity(I3), Iet.identity(I4))


def test_equals_examples():
    f = rot(I3, 1, 2)
    assert equals(f, f)
    assert not equals(rot(I3, 1, 2), rot(I3, 2, 1))
    # the same map from a finer partition
    g = iet_new(I3, [S("1/2"), S("1/2"), S(1), S(1)], [3, 4, 1, 2])
    assert equals(f, g)


def test_powers():
    f = rot(I3, 1, 2)
    assert f ** 3 == Iet.identity(I3)
    assert f ** -1 == invert(f)
    assert f * f == compose(f, f)


# rotations and swaps ------------------------------------------------------------

def test_equal_type_rotation_is_swap():
    a = S("1/2*sqrt(2)")
    assert rot(I3, a, a, S("1/4")) == interval_swap(I3, SwapSpec(a, S("1/4"), S("1/4") + a))


def test_adjacent_swap_is_two_block_exchange():
    f = swap(Interval(S(0), S(2)), 1, 0, 1)
    assert f.k == 2 and f.perm == (2, 1)


def test_irrational_rotation_has_three_parts():
    f = rot(I3, 1, "sqrt(2)")
    assert f.k == 3
    assert f.lengths == (S(1), S("sqrt(2)"), S("2 - sqrt(2)"))
    assert f.translations[2] == S(0)


def test_spec_validation():
    with pytest.raises(errors.SupportOutsideBase):
        rot(I3, 2, 2)
    with pytest.raises(errors.OverlappingBlocks):
        swap(I4, 2, 0, 1)
    with pytest.raises(errors.PreconditionError):
        RotationSpec(S(0), S(1), S(0))
    with pytest.raises(errors.PreconditionError):
        SwapSpec(S(-1), S(0), S(2))


def test_support_examples():
    assert support(Iet.identity(I3)) == []
    base = Interval(S(0), S(10))
    assert support(rot(base, 1, "sqrt(2)", 2)) == [Interval(S(2), S("3 + sqrt(2)"))]
    assert support(swap(base, 1, 2, 5)) == [Interval(S(2), S(3)), Interval(S(5), S(6))]


def test_recognisers():
    base = Interval(S(0), S(10))
    assert as_swap(swap(base, 1, 2, 5)) == SwapSpec(S(1), S(2), S(5))
    assert as_swap(rot(base, 1, 2, 0)) is None
    assert as_rotation(rot(base, 1, "sqrt(2)", 2)) == RotationSpec(S(1), S("sqrt(2)"), S(2))
    assert as_rotation(swap(base, 1, 2, 5)) is None


# order -----------------------------------------------------------------------

def test_order_examples():
    assert str(order(swap(I4, 1, 0, 2))) == "finite 2"
    res = order(rot(I3, 1, 2), 100)
    assert res.finite and res.n == 3
    assert order(rot(I3, 1, "sqrt(2)")).infinite
    assert order(Iet.identity(I3)).n == 1


def test_order_bound():
    res = order(rot(Interval(S(0), S(50)), 1, 49), 10)
    assert res.bound_exceeded and res.n == 10
    assert str(res) == "bound-exceeded 10"


# properties -------------------------------------------------------------------

@given(iets(), iets(), iets())
def test_associativity(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(iets())
def test_inverse_laws(f):
    assert compose(f, invert(f)).is_identity()
    assert compose(invert(f), f).is_identity()
    assert invert(invert(f)) == f


@given(iets(), iets())
def test_invert_reverses_products(f, g):
    assert invert(compose(f, g)) == compose(invert(g), invert(f))


@given(iets(), iets(), st.fractions(min_value=0, max_value=Fraction(63, 64), max_denominator=64))
def test_apply_of_compose(f, g, u):
    x = f.base.lo + f.base.width * u
    assert apply(compose(f, g), x) == apply(f, apply(g, x)) == pointwise(f, pointwise(g, x))


@given(iets())
def test_canonical_form(f):
    # no neighbours share a translation, and rebuilding is idempotent
    assert all(s != t for s, t in zip(f.translations, f.translations[1:]))
    assert iet_new(f.base, f.lengths, f.perm) == f


@given(iets(), st.lists(st.fractions(min_value=Fraction(1, 64), max_value=Fraction(63, 64), max_denominator=64), max_size=4))
def test_partition_independence(f, us):
    # rebuilding from a refinement gives identical canonical data
    cuts = sorted(set(f.starts[1:]) | {f.base.lo + f.base.width * u for u in us})
    edges = [f.base.lo] + cuts + [f.base.hi]
    lengths = [b - a for a, b in zip(edges, edges[1:])]
    translations = [f.translations[f.block_index(a)] for a in edges[:-1]]
    assert from_translations(f.base, lengths, translations) == f


@given(iets())
def test_images_tile_the_base(f):
    images = sorted((x + t, lam) for x, lam, t in zip(f.starts, f.lengths, f.translations))
    pos = f.base.lo
    for lo, lam in images:
        assert lo == pos
        pos = pos + lam
    assert pos == f.base.hi
