import random

import pytest
from conftest import S, iets
from hypothesis import given

from iet import errors
from iet.core import (
    Iet,
    Interval,
    RotationSpec,
    SwapSpec,
    compose,
    iet_new,
    interval_swap,
    invert,
    order,
    restricted_rotation,
)
from iet.factor import (
    Commutator,
    adjacent_transpositions,
    balanced_rotations_factorization,
    balanced_to_swaps,
    conjugate_same_type_small,
    conjugator_for_disjoint_swaps,
    disjoint_rotations_to_swaps,
    finite_order_to_swaps,
    is_balanced,
    product,
    rational_rank,
    rebase_nonneg_integer,
    refine_swap,
    rotation_commutator_to_swaps,
    rotation_pair_to_swaps,
    rotation_reduce_small,
    rotation_step_reduce,
    rotations_factorization,
    simplicity_bound,
    simplicity_witness,
    small_swap,
    small_swap_from_nontrivial,
    swap_as_commutator,
    type_counts,
    zero_saf_to_commutators,
    zero_saf_to_swaps,
)
from iet.generators import random_lattice_iet, random_zero_saf
from iet.saf import saf

B3 = Interval(S(0), S(3))
B8 = Interval(S(0), S(8))
B10 = Interval(S(0), S(10))
B20 = Interval(S(0), S(20))


def R(a, b, start=0):
    return RotationSpec(S(a), S(b), S(start))


def W(a, x, y):
    return SwapSpec(S(a), S(x), S(y))


def is_involution(g):
    return compose(g, g).is_identity() and not g.is_identity()


# restricted rotations ------------------------------------------------------------

def test_identity_as_rotations():
    cert = rotations_factorization(Iet.identity(B10))
    h, h_inv = cert.factors
    assert h_inv == h.inverse() and cert.verify()


def test_two_interval_exchange_is_one_rotation():
    f = iet_new(B3, [S(1), S("sqrt(2)")] + [S("2 - sqrt(2)")], [2, 1, 3])
    cert = rotations_factorization(f)
    assert cert.factors == (R(1, "sqrt(2)"),) and cert.verify()


def test_figure_one_rotations():
    f = iet_new(Interval(S(0), S(4)), [1, 1, 1, 1], [2, 4, 1, 3])
    cert = rotations_factorization(f)
    assert cert.verify() and cert.all_of("rotation")
    assert all(r.a == 1 and r.b == 1 for r in cert.factors)


def test_adjacent_transpositions_expand_cycles():
    # (1 3) = t1 t2 t1
    assert adjacent_transpositions([3, 2, 1]) == [1, 2, 1]
    assert adjacent_transpositions([1, 2]) == [1, 1]
    assert adjacent_transpositions([1]) == []


@given(iets(max_k=7))
def test_rotation_types_use_subinterval_lengths(f):
    cert = rotations_factorization(f)
    assert cert.verify() and cert.all_of("rotation")
    if f.k >= 2:
        lengths = set(f.lengths)
        assert all(r.a in lengths and r.b in lengths for r in cert.factors)


# finite order --------------------------------------------------------------------

def test_swap_is_its_own_factorization():
    s = W(1, 0, 2)
    cert = finite_order_to_swaps(interval_swap(B3, s))
    assert cert.factors == (s,) and cert.verify()


def test_equal_type_rotation_is_one_swap():
    cert = finite_order_to_swaps(restricted_rotation(B3, R(1, 1)))
    assert cert.factors == (W(1, 0, 1),)


def test_three_cycle_needs_two_swaps():
    cert = finite_order_to_swaps(restricted_rotation(B3, R(1, 2)))
    assert len(cert) == 2 and all(s.a == 1 for s in cert.factors) and cert.verify()


def test_finite_order_errors():
    with pytest.raises(errors.NotFiniteOrder):
        finite_order_to_swaps(restricted_rotation(B3, R(1, "sqrt(2)")))
    with pytest.raises(errors.BoundExceeded):
        finite_order_to_swaps(restricted_rotation(Interval(S(0), S(50)), R(1, 49)), max_iter=10)


def test_finite_order_permutation_of_equal_blocks():
    rng = random.Random(3)
    for k in range(2, 8):
        perm = list(range(1, k + 1))
        rng.shuffle(perm)
        f = iet_new(Interval(S(0), S("sqrt(5)")), [S("sqrt(5)") / k] * k, perm)
        cert = finite_order_to_swaps(f)
        assert cert.verify() and cert.all_of("swap")


# commutators and conjugators ----------------------------------------------------

def test_swap_as_commutator_example():
    s = W(2, 0, 4)
    g3, g = swap_as_commutator(s, B8)
    assert g3 == interval_swap(B8, W(1, 0, 4))
    assert g == compose(interval_swap(B8, W(1, 0, 1)), interval_swap(B8, W(1, 4, 5)))
    assert compose(g3, g) ** 2 == interval_swap(B8, s)
    assert compose(invert(g3), compose(invert(g), compose(g3, g))) == interval_swap(B8, s)
    assert order(g3).n == order(g).n == 2


def test_swap_as_commutator_random():
    rng = random.Random(5)
    for _ in range(50):
        a = S(rng.randint(1, 8)) / 4 + S("sqrt(2)") / rng.randint(8, 16)
        x = S(rng.randint(0, 8)) / 8
        y = x + a + S(rng.randint(0, 8)) / 8
        s = SwapSpec(a, x, y)
        g3, g = swap_as_commutator(s, B10)
        assert is_involution(g3) and is_involution(g)
        assert Commutator(g3, g).to_iet(B10) == interval_swap(B10, s)


def test_conjugator_for_disjoint_swaps():
    s1, s2 = W(1, 0, 2), W(1, 4, 6)
    g = conjugator_for_disjoint_swaps(s1, s2, B8)
    assert g == compose(interval_swap(B8, W(1, 0, 4)), interval_swap(B8, W(1, 2, 6)))
    assert compose(g, compose(interval_swap(B8, s1), g)) == interval_swap(B8, s2)
    assert order(g).n == 2
    with pytest.raises(errors.TypeMismatch):
        conjugator_for_disjoint_swaps(s1, W(2, 4, 6), B8)
    with pytest.raises(errors.OverlappingSupports):
        conjugator_for_disjoint_swaps(s1, W(1, 2, 5), B8)


def test_disjoint_rotations_give_three_swaps():
    cert = disjoint_rotations_to_swaps(R(1, 2, 0), R(1, 2, 5), B10)
    assert [s.a for s in cert.factors] == [S(3), S(2), S(1)]
    assert cert.verify()
    with pytest.raises(errors.OverlappingSupports):
        disjoint_rotations_to_swaps(R(1, 2, 0), R(1, 2, 2), B10)
    with pytest.raises(errors.TypeMismatch):
        disjoint_rotations_to_swaps(R(1, 2, 0), R(2, 1, 5), B10)


def test_rotation_step_reduce():
    r = R(3, 1, 0)
    g1, h, g2 = rotation_step_reduce(r, Interval(S(0), S(5)))
    assert h == R(2, 1, 0) and g1 == W(1, 0, 3)
    base = Interval(S(0), S(5))
    f = restricted_rotation(base, r)
    hh = restricted_rotation(base, h)
    assert compose(interval_swap(base, g1), f) == hh == compose(f, interval_swap(base, g2))
    with pytest.raises(errors.PreconditionAB):
        rotation_step_reduce(R(1, 1, 0))


def test_small_swap_from_rotation():
    f = restricted_rotation(B3, R(1, 2))
    g1, g2, s = small_swap_from_nontrivial(f, S("1/2"))
    assert s == W("1/2", 0, 2)
    G1, G2 = interval_swap(B3, g1), interval_swap(B3, g2)
    lhs = compose(G2, compose(invert(f), compose(G1, compose(f, compose(G1, G2)))))
    assert lhs == interval_swap(B3, s)
    assert small_swap(f, S("1/2")).verify()


def test_small_swap_errors():
    f = restricted_rotation(B3, R(1, 2))
    with pytest.raises(errors.EpsTooLarge) as info:
        small_swap_from_nontrivial(f, S(1))
    assert info.value.eps0 == S(1)
    with pytest.raises(errors.IdentityInput):
        small_swap_from_nontrivial(Iet.identity(B3), S("1/2"))


# rebasing and balanced products ----------------------------------------------------

def test_rebase_examples():
    rb = rebase_nonneg_integer([S("sqrt(3)")])
    assert rb.basis == (S("sqrt(3)"),) and rb.coords == ((1,),)
    rb = rebase_nonneg_integer([S("1/2"), S("1/3")])
    assert rb.basis == (S("1/6"),) and rb.coords == ((3,), (2,))


def test_rebase_independent_pair():
    lengths = [S("sqrt(2) - 1"), S(1)]
    rb = rebase_nonneg_integer(lengths)
    # already independent, so the lengths themselves serve as the basis
    assert rational_rank(list(rb.basis)) == 2
    assert [rb.combination(i) for i in range(2)] == lengths


def test_rebase_dependent_lengths():
    lengths = [S("sqrt(2)"), S(1), S("2 - sqrt(2)"), S("sqrt(2) - 1"), S("3/2")]
    rb = rebase_nonneg_integer(lengths)
    assert all(l.sign() > 0 for l in rb.basis)
    assert rational_rank(list(rb.basis)) == len(rb.basis) == 2
    assert all(c >= 0 for row in rb.coords for c in row)
    assert [rb.combination(i) for i in range(len(lengths))] == lengths


def test_rebase_random():
    rng = random.Random(9)
    units = [S(1), S("sqrt(2)"), S("sqrt(3)")]
    for _ in range(100):
        lengths = []
        while len(lengths) < 5:
            x = sum((u * rng.randint(-4, 4) for u in units), S(0)) / rng.randint(1, 4)
            if x.sign() > 0:
                lengths.append(x)
        rb = rebase_nonneg_integer(lengths)
        assert rational_rank(list(rb.basis)) == len(rb.basis)
        assert all(l.sign() > 0 for l in rb.basis)
        assert all(isinstance(c, int) and c >= 0 for row in rb.coords for c in row)
        assert [rb.combination(i) for i in range(5)] == lengths


def test_rebase_rejects_nonpositive():
    with pytest.raises(errors.NonPositiveInput):
        rebase_nonneg_integer([S(1), S(0)])


def test_balanced_identity():
    cert = balanced_rotations_factorization(Iet.identity(B10))
    h, h_inv = cert.factors
    assert h_inv == h.inverse() and is_balanced(cert.factors)


def test_balanced_example():
    f = compose(restricted_rotation(B10, R(1, "sqrt(2)", 0)), restricted_rotation(B10, R("sqrt(2)", 1, 3)))
    cert = balanced_rotations_factorization(f)
    assert cert.verify() and is_balanced(cert.factors)
    counts = type_counts(cert.factors)
    assert all(counts[(b, a)] == n for (a, b), n in counts.items())


def test_balanced_swap_and_nonzero():
    cert = balanced_rotations_factorization(interval_swap(B10, W("sqrt(2)", 1, 5)))
    assert cert.verify() and is_balanced(cert.factors)
    with pytest.raises(errors.NonzeroSaf):
        balanced_rotations_factorization(restricted_rotation(B10, R(1, "sqrt(2)")))


# reducing rotation types ---------------------------------------------------------

@pytest.mark.parametrize("r, eps", [(R(3, 1, 0), S(3)), (R(1, "sqrt(2)", 0), S("1/2")), (R(2, 3, 4), S("1/10"))])
def test_rotation_reduce_small(r, eps):
    h, tail = rotation_reduce_small(r, B10, eps)
    assert h.a + h.b < eps and h.a.sign() > 0 and h.b.sign() > 0
    assert tail.verify() and tail.all_of("swap")
    assert compose(restricted_rotation(B10, h), tail.product()) == restricted_rotation(B10, r)


def test_rotation_reduce_equal_type():
    r = R(1, 1, 0)
    h, tail = rotation_reduce_small(r, Interval(S(0), S(2)), S(1))
    assert h == R("1/4", "1/4", 0)
    assert tail.factors == (W("1/4", 0, "1/4"), W(1, 0, 1))
    assert compose(restricted_rotation(Interval(S(0), S(2)), h), tail.product()) == restricted_rotation(Interval(S(0), S(2)), r)


def test_rotation_reduce_rejects_nonpositive_eps():
    with pytest.raises(errors.NonPositiveInput):
        rotation_reduce_small(R(1, 2), B10, S(0))


def test_rotation_pair_small_disjoint_case():
    cert = rotation_pair_to_swaps(R("1/2", "1/2", 0), R("1/2", "1/2", 3), B10)
    assert len(cert) == 6 and cert.verify() and cert.all_of("swap")


def test_rotation_pair_same_rotation():
    cert = rotation_pair_to_swaps(R(1, "sqrt(2)", 1), R(1, "sqrt(2)", 1), B10)
    assert cert.verify() and cert.target.is_identity()


def test_rotation_pair_large_type():
    cert = rotation_pair_to_swaps(R(2, 3, 0), R(2, 3, 5), B10)
    assert cert.verify() and cert.all_of("swap")
    with pytest.raises(errors.TypeMismatch):
        rotation_pair_to_swaps(R(2, 3, 0), R(3, 2, 5), B10)


def test_rotation_commutator_cases():
    r = R(1, "sqrt(2)", 0)
    cert = rotation_commutator_to_swaps(r, Iet.identity(B10), B10)
    assert cert.verify() and cert.target.is_identity()
    # g moves the whole support rigidly
    shift = interval_swap(B10, W("1 + sqrt(2)", 0, 5))
    cert = rotation_commutator_to_swaps(r, shift, B10)
    assert cert.verify() and cert.all_of("swap")
    rng = random.Random(2)
    for _ in range(5):
        g = random_lattice_iet(rng, B10, 4, (1, 2))
        cert = rotation_commutator_to_swaps(r, g, B10)
        assert cert.verify() and cert.all_of("swap")


def test_balanced_to_swaps_examples():
    cert = balanced_to_swaps([R(1, 1, 0)], B10)
    assert cert.factors == (W(1, 0, 1),)
    cert = balanced_to_swaps([R(1, "sqrt(2)", 0), R("sqrt(2)", 1, 0)], B10)
    assert cert.verify() and cert.all_of("swap")
    cert = balanced_to_swaps([R(1, "sqrt(2)", 0), R(1, 2, 4), R("sqrt(2)", 1, 6), R(2, 1, 1)], B10)
    assert cert.verify()
    with pytest.raises(errors.NotBalanced):
        balanced_to_swaps([R(1, "sqrt(2)", 0)], B10)


# zero-SAF pipelines ------------------------------------------------------------

def test_zero_saf_examples():
    ident = Iet.identity(B10)
    assert zero_saf_to_swaps(ident).verify()
    assert zero_saf_to_commutators(ident).verify()
    with pytest.raises(errors.NonzeroSaf):
        zero_saf_to_swaps(restricted_rotation(B10, R(1, "sqrt(2)")))
    with pytest.raises(errors.NonzeroSaf):
        zero_saf_to_commutators(restricted_rotation(B10, R(1, "sqrt(2)")))


def test_swap_is_one_commutator_per_swap():
    f = interval_swap(B10, W("sqrt(2)", 1, 5))
    swaps = zero_saf_to_swaps(f)
    cert = zero_saf_to_commutators(f)
    assert cert.verify() and cert.all_of("commutator") and len(cert) == len(swaps)


def test_random_commutators_factor():
    rng = random.Random(17)
    for _ in range(10):
        f = random_zero_saf(rng, None, 2, 3, (1, 2), max_pieces=16)
        swaps = zero_saf_to_swaps(f)
        assert swaps.verify() and swaps.all_of("swap")
        assert all(is_involution(s.to_iet(f.base)) for s in swaps.factors)
        assert saf(product(f.base, swaps.factors[:3])).is_zero()
        assert zero_saf_to_commutators(f).verify()


# small swaps and simplicity ------------------------------------------------------

def test_refine_examples():
    cert = refine_swap(W(1, 0, 2), S("1/3"), B3)
    assert cert.factors == tuple(W("1/4", S(i) / 4, 2 + S(i) / 4) for i in range(4))
    assert cert.verify()
    assert refine_swap(W(1, 0, 2), S(2), B3).factors == (W(1, 0, 2),)
    # a/N must stay strictly below eps
    assert refine_swap(W(1, 0, 2), S("1/2"), B3).factors[0].a == S("1/3")
    assert refine_swap(W("sqrt(2)", 0, 2), S("1/5"), Interval(S(0), S(4))).verify()


def test_conjugate_far_apart_swaps():
    s1, s2 = W(1, 0, 5), W(1, 12, 17)
    c = conjugate_same_type_small(s1, s2, B20)
    assert c.verify()
    assert compose(invert(c.g), compose(interval_swap(B20, s2), c.g)) == interval_swap(B20, s1)


def test_conjugate_self():
    s = W("1/2", 3, 7)
    c = conjugate_same_type_small(s, s, B20)
    assert c.verify()


def test_conjugate_errors():
    with pytest.raises(errors.TypeMismatch):
        conjugate_same_type_small(W(1, 0, 5), W("1/2", 12, 17), B20)
    with pytest.raises(errors.TypeTooLarge):
        conjugate_same_type_small(W(2, 0, 5), W(2, 12, 17), B20)


def test_simplicity_chain_for_two_unit_swaps():
    f = compose(interval_swap(B20, W(1, 0, 2)), interval_swap(B20, W(1, 10, 15)))
    w = simplicity_witness(f, S("1/8"))
    assert w.verify()
    assert w.step.swap.a == S("1/8")
    assert all(p.a < S("1/8") for p in w.refinement.factors)
    assert len(w.piece_conjugations) == len(w.refinement.factors)


def test_simplicity_errors():
    with pytest.raises(errors.IdentityInput):
        simplicity_witness(Iet.identity(B20), S("1/8"))
    with pytest.raises(errors.NonzeroSaf):
        simplicity_witness(restricted_rotation(B20, R(1, "sqrt(2)")), S("1/8"))
    f = interval_swap(B20, W(1, 0, 2))
    assert simplicity_bound(f) == S(1)
    with pytest.raises(errors.EpsTooLarge):
        simplicity_witness(f, S(1))
