"""Small swaps, their conjugacy inside the commutator group, and the chain
showing that a nontrivial zero-SAF map generates every swap under
conjugation."""

from __future__ import annotations

from dataclasses import dataclass

from .. import errors
from ..core import Iet, Interval, SwapSpec, compose, interval_swap, invert
from ..exact import SurdReal, surd, surd_min
from ..saf import saf
from .certificates import Commutator, Factorization
from .elementary import (
    default_swap,
    small_swap_from_nontrivial,
    small_swap_threshold,
    swap_as_commutator,
)
from .kernel import free_pieces


def _floor_ratio(a: SurdReal, eps: SurdReal) -> int:
    """``floor(a / eps)`` for positive ``a`` and ``eps``, by exact comparison."""
    lo, hi = 0, 1
    while eps * hi <= a:
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if eps * mid <= a:
            lo = mid
        else:
            hi = mid
    return lo


def refine_swap(s: SwapSpec, eps, base: Interval) -> Factorization:
    """``s`` as a product of ``N`` commuting swaps of type ``a/N < eps``,
    with ``N`` the least such count."""
    eps = surd(eps)
    if eps.sign() <= 0:
        raise errors.NonPositiveInput(f"eps must be positive, got {eps}")
    target = interval_swap(base, s)
    n = _floor_ratio(s.a, eps) + 1
    step = s.a / n
    pieces = [SwapSpec(step, s.x + step * i, s.y + step * i) for i in range(n)]
    return Factorization(base, pieces, target, {"pieces": n})


def membership(s: SwapSpec, base: Interval) -> Factorization:
    """A swap as one commutator of involutions."""
    return Factorization(base, [Commutator(*swap_as_commutator(s, base))], interval_swap(base, s))


def _involution_membership(swaps: list[SwapSpec], base: Interval, target: Iet) -> Factorization:
    return Factorization(base, [Commutator(*swap_as_commutator(s, base)) for s in swaps], target)


def _conj(h: Iet, c: Iet) -> Iet:
    # c^-1 h c
    return compose(invert(c), compose(h, c))


@dataclass(frozen=True)
class Conjugation:
    """``source == g^-1 target g`` with ``g = g2 g1`` in the commutator group.

    ``g1`` conjugates the auxiliary swap ``middle`` to ``source`` and ``g2``
    conjugates ``target`` to ``middle``; both are involutions made of two
    swaps, certified as products of commutators.
    """

    base: Interval
    source: SwapSpec
    target: SwapSpec
    middle: SwapSpec
    g1: Iet
    g2: Iet
    g1_commutators: Factorization
    g2_commutators: Factorization

    @property
    def g(self) -> Iet:
        return compose(self.g2, self.g1)

    def checks(self) -> list[tuple[str, bool]]:
        base = self.base
        s1 = interval_swap(base, self.source)
        s2 = interval_swap(base, self.target)
        f0 = interval_swap(base, self.middle)
        ident = Iet.identity(base)
        return [
            ("source = g1 middle g1", compose(self.g1, compose(f0, self.g1)) == s1),
            ("middle = g2 target g2", compose(self.g2, compose(s2, self.g2)) == f0),
            ("source = g^-1 target g", _conj(s2, self.g) == s1),
            ("g1 is an involution", compose(self.g1, self.g1) == ident),
            ("g2 is an involution", compose(self.g2, self.g2) == ident),
            ("g1 is a product of commutators", self.g1_commutators.verify()),
            ("g2 is a product of commutators", self.g2_commutators.verify()),
        ]

    def verify(self) -> bool:
        return all(ok for _, ok in self.checks())


def _cross_swaps(s1: SwapSpec, s2: SwapSpec) -> list[SwapSpec]:
    # the involution exchanging the blocks of s1 with those of s2
    return [SwapSpec(s1.a, s1.x, s2.x), SwapSpec(s1.a, s1.y, s2.y)]


def conjugate_same_type_small(s1: SwapSpec, s2: SwapSpec, base: Interval) -> Conjugation:
    """A conjugator ``g`` in the commutator group with ``s1 = g^-1 s2 g``,
    for swaps of one type ``a < width/10``.

    An auxiliary swap ``f0`` is placed at the left ends of the two leftmost
    tenths of the base that miss both supports.
    """
    if s1.a != s2.a:
        raise errors.TypeMismatch(f"swap types differ: {s1.a} vs {s2.a}")
    a = s1.a
    interval_swap(base, s1)
    interval_swap(base, s2)
    if not a < base.width / 10:
        raise errors.TypeTooLarge(f"type {a} is not below width/10 = {base.width / 10}")
    blocks = [(s.x, s.x + a) for s in (s1, s2)] + [(s.y, s.y + a) for s in (s1, s2)]
    p1, p2 = free_pieces(base, 10, blocks)[:2]
    f0 = SwapSpec(a, p1, p2)
    cross1 = _cross_swaps(f0, s1)
    cross2 = _cross_swaps(s2, f0)
    g1 = compose(interval_swap(base, cross1[0]), interval_swap(base, cross1[1]))
    g2 = compose(interval_swap(base, cross2[0]), interval_swap(base, cross2[1]))
    return Conjugation(
        base,
        s1,
        s2,
        f0,
        g1,
        g2,
        _involution_membership(cross1, base, g1),
        _involution_membership(cross2, base, g2),
    )


@dataclass(frozen=True)
class SmallSwap:
    """``swap == g2 f^-1 g1 f g1 g2``, read as the product of the conjugates
    ``g2 f^-1 g2`` and ``(g1 g2)^-1 f (g1 g2)``."""

    base: Interval
    f: Iet
    g1: SwapSpec
    g2: SwapSpec
    swap: SwapSpec
    g1_commutator: Factorization
    g2_commutator: Factorization

    def checks(self) -> list[tuple[str, bool]]:
        base, f = self.base, self.f
        g1 = interval_swap(base, self.g1)
        g2 = interval_swap(base, self.g2)
        s = interval_swap(base, self.swap)
        finv = invert(f)
        direct = compose(g2, compose(finv, compose(g1, compose(f, compose(g1, g2)))))
        as_conjugates = compose(_conj(finv, g2), _conj(f, compose(g1, g2)))
        return [
            (f"swap of type {self.swap.a} = g2 f^-1 g1 f g1 g2", direct == s),
            ("it is a product of conjugates of f and f^-1", as_conjugates == s),
            ("g1 is a commutator", self.g1_commutator.verify()),
            ("g2 is a commutator", self.g2_commutator.verify()),
        ]

    def verify(self) -> bool:
        return all(ok for _, ok in self.checks())


def small_swap(f: Iet, eps) -> SmallSwap:
    g1, g2, s = small_swap_from_nontrivial(f, eps)
    return SmallSwap(f.base, f, g1, g2, s, membership(g1, f.base), membership(g2, f.base))


@dataclass(frozen=True)
class SimplicityWitness:
    """Evidence that the normal closure of ``f`` in the commutator group
    contains every interval swap.

    * ``step``: a swap ``s`` of type ``eps`` built from conjugates of ``f^+-1``.
    * ``sample``: another swap of type ``eps``, conjugated onto ``s``.
    * ``refinement``: a large sample swap split into swaps of type
      ``delta < eps``; ``piece_step`` builds a type-``delta`` swap from ``f``
      and ``piece_conjugations`` conjugate each piece onto it.
    """

    f: Iet
    eps: SurdReal
    step: SmallSwap
    sample: Conjugation
    refinement: Factorization
    piece_step: SmallSwap
    piece_conjugations: tuple[Conjugation, ...]

    @property
    def base(self) -> Interval:
        return self.f.base

    def checks(self) -> list[tuple[str, bool]]:
        out = [("saf(f) = 0", saf(self.f).is_zero())]
        out += [("step: " + name, ok) for name, ok in self.step.checks()]
        out += [("sample: " + name, ok) for name, ok in self.sample.checks()]
        out.append(("refinement recomposes", self.refinement.verify()))
        out += [("piece step: " + name, ok) for name, ok in self.piece_step.checks()]
        for i, c in enumerate(self.piece_conjugations, start=1):
            out.append((f"piece {i} conjugate to the piece step swap", c.verify()))
        return out

    def verify(self) -> bool:
        return all(ok for _, ok in self.checks())


def simplicity_bound(f: Iet) -> SurdReal:
    """``min(eps1, width/10)``: the chain exists for every smaller eps."""
    eps1, _, _ = small_swap_threshold(f)
    return surd_min(eps1, f.base.width / 10)


def simplicity_witness(f: Iet, eps) -> SimplicityWitness:
    eps = surd(eps)
    if f.is_identity():
        raise errors.IdentityInput("the identity generates the trivial subgroup")
    s = saf(f)
    if not s.is_zero():
        raise errors.NonzeroSaf(s)
    if eps.sign() <= 0:
        raise errors.NonPositiveInput(f"eps must be positive, got {eps}")
    bound = simplicity_bound(f)
    if not eps < bound:
        raise errors.EpsTooLarge(bound)
    base = f.base
    step = small_swap(f, eps)
    # a same-type swap placed in the right half of the base
    half, quarter = base.width / 2, base.width / 4
    other = SwapSpec(eps, base.lo + half, base.lo + half + quarter)
    sample = conjugate_same_type_small(other, step.swap, base)
    refinement = refine_swap(default_swap(base), eps, base)
    delta = refinement.factors[0].a
    piece_step = small_swap(f, delta)
    conjugations = tuple(conjugate_same_type_small(p, piece_step.swap, base) for p in refinement.factors)
    return SimplicityWitness(f, eps, step, sample, refinement, piece_step, conjugations)

