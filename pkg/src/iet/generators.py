"""Seeded random instances: surds, maps, rotations, swaps, zero-SAF maps."""

from __future__ import annotations

import functools
import random
from fractions import Fraction
from typing import Sequence

from .core import (
    Iet,
    Interval,
    RotationSpec,
    SwapSpec,
    compose,
    compose_all,
    interval_swap,
    invert,
    restricted_rotation,
)
from .exact import ZERO, SurdReal, surd_cmp

RADICAND_SETS = ((1,), (1, 2), (1, 2, 3))


def random_rational(rng: random.Random, lo: int, hi: int, max_den: int = 4) -> Fraction:
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(lo * den, hi * den), den)


def random_surd(rng: random.Random, radicands: Sequence[int] = (1, 2), scale: int = 3) -> SurdReal:
    return SurdReal({d: random_rational(rng, -scale, scale) for d in radicands})


def random_positive_surd(rng: random.Random, radicands: Sequence[int] = (1, 2), scale: int = 3) -> SurdReal:
    while True:
        x = random_surd(rng, radicands, scale)
        if x.sign() > 0:
            return x


def random_base(rng: random.Random, radicands: Sequence[int] = (1, 2)) -> Interval:
    width = SurdReal({1: rng.randint(4, 10)}) + SurdReal({d: random_rational(rng, 0, 1) for d in radicands if d != 1})
    return Interval(ZERO, width)


def random_point(rng: random.Random, base: Interval, radicands: Sequence[int] = (1, 2)) -> SurdReal:
    """A point of ``(lo, hi)`` with small surd perturbations."""
    while True:
        u = Fraction(rng.randint(1, 63), 64)
        x = base.lo + base.width * u
        noise = SurdReal({d: Fraction(rng.randint(-4, 4), 8) for d in radicands if d != 1})
        y = x + noise
        if base.lo < y < base.hi:
            return y
        if base.lo < x < base.hi:
            return x


def random_cuts(rng: random.Random, base: Interval, k: int, radicands: Sequence[int] = (1, 2)) -> list[SurdReal]:
    """``k - 1`` distinct sorted interior points."""
    pts: set[SurdReal] = set()
    tries = 0
    while len(pts) < k - 1 and tries < 50 * k:
        pts.add(random_point(rng, base, radicands))
        tries += 1
    return sorted(pts, key=functools.cmp_to_key(surd_cmp))


def random_iet(rng: random.Random, base: Interval, k_max: int = 8, radicands: Sequence[int] = (1, 2), k: int | None = None) -> Iet:
    if k is None:
        k = rng.randint(1, k_max)
    cuts = random_cuts(rng, base, k, radicands)
    edges = [base.lo] + cuts + [base.hi]
    lengths = [b - a for a, b in zip(edges, edges[1:])]
    perm = list(range(1, len(lengths) + 1))
    rng.shuffle(perm)
    return Iet(base, lengths, perm)


def random_refinement(rng: random.Random, f: Iet, extra: int, radicands: Sequence[int] = (1, 2)) -> tuple[list[SurdReal], list[SurdReal]]:
    """A finer partition of ``f``: subinterval lengths and translations."""
    cuts = set(random_cuts(rng, f.base, extra + 1, radicands))
    cuts.update(f.starts[1:])
    edges = [f.base.lo] + sorted(cuts, key=functools.cmp_to_key(surd_cmp)) + [f.base.hi]
    lengths, translations = [], []
    for a, b in zip(edges, edges[1:]):
        lengths.append(b - a)
        translations.append(f.translations[f.block_index(a)])
    return lengths, translations


def random_rotation_spec(rng: random.Random, base: Interval, radicands: Sequence[int] = (1, 2)) -> RotationSpec:
    while True:
        pts = sorted(
            {random_point(rng, base, radicands) for _ in range(3)} | {base.lo},
            key=functools.cmp_to_key(surd_cmp),
        )
        if len(pts) < 3:
            continue
        i = rng.randrange(len(pts) - 2)
        x, y, z = pts[i], pts[i + 1], pts[i + 2]
        return RotationSpec(y - x, z - y, x)


def random_swap_spec(rng: random.Random, base: Interval, radicands: Sequence[int] = (1, 2)) -> SwapSpec:
    """Swap of type ``min(p2 - p1, p4 - p3)`` between ``p1`` and ``p3`` for
    random points ``p1 < p2 < p3 < p4``."""
    while True:
        pts = sorted({random_point(rng, base, radicands) for _ in range(4)}, key=functools.cmp_to_key(surd_cmp))
        if len(pts) == 4:
            p1, p2, p3, p4 = pts
            a = p2 - p1 if p2 - p1 < p4 - p3 else p4 - p3
            if rng.random() < 0.5:
                return SwapSpec(a, p1, p3)
            return SwapSpec(a, p3, p1)


def random_commutator(rng: random.Random, base: Interval, k_max: int = 3, radicands: Sequence[int] = (1, 2)) -> Iet:
    u = random_iet(rng, base, k_max, radicands)
    v = random_iet(rng, base, k_max, radicands)
    return compose_all(base, [invert(u), invert(v), u, v])


def lattice_units(radicands: Sequence[int] = (1, 2)) -> list[SurdReal]:
    """Generators ``1/2`` and ``sqrt(d)/2`` of a coarse breakpoint lattice."""
    return [SurdReal(Fraction(1, 2))] + [SurdReal.sqrt(d) / 2 for d in radicands if d != 1]


def lattice_base(radicands: Sequence[int] = (1, 2)) -> Interval:
    width = ZERO
    for u, c in zip(lattice_units(radicands), (8, 3, 2)):
        width = width + u * c
    return Interval(ZERO, width)


def random_lattice_point(rng: random.Random, base: Interval, radicands: Sequence[int] = (1, 2), max_coef: int = 8) -> SurdReal:
    """An interior point ``lo + sum(n_i * unit_i)`` with ``0 <= n_i <= max_coef``."""
    units = lattice_units(radicands)
    while True:
        x = base.lo
        for u in units:
            x = x + u * rng.randint(0, max_coef)
        if base.lo < x < base.hi:
            return x


def random_lattice_iet(rng: random.Random, base: Interval, k_max: int = 4, radicands: Sequence[int] = (1, 2)) -> Iet:
    """A random map whose breakpoints lie on the lattice of :func:`random_lattice_point`."""
    # two blocks would make a circle rotation, and those all commute
    k = rng.randint(3, max(3, k_max))
    pts: set[SurdReal] = set()
    for _ in range(20 * k):
        if len(pts) >= k - 1:
            break
        pts.add(random_lattice_point(rng, base, radicands))
    edges = [base.lo] + sorted(pts, key=functools.cmp_to_key(surd_cmp)) + [base.hi]
    perm = list(range(1, len(edges)))
    rng.shuffle(perm)
    return Iet(base, [b - a for a, b in zip(edges, edges[1:])], perm)


def random_lattice_swap(rng: random.Random, base: Interval, radicands: Sequence[int] = (1, 2)) -> SwapSpec:
    while True:
        pts = sorted({random_lattice_point(rng, base, radicands) for _ in range(4)}, key=functools.cmp_to_key(surd_cmp))
        if len(pts) == 4:
            p1, p2, p3, p4 = pts
            a = p2 - p1 if p2 - p1 < p4 - p3 else p4 - p3
            return SwapSpec(a, p1, p3)


def random_zero_saf(
    rng: random.Random,
    base: Interval | None = None,
    factors: int = 2,
    k_max: int = 3,
    radicands: Sequence[int] = (1, 2),
    max_pieces: int | None = None,
) -> Iet:
    """A product of random commutators and random swaps.

    Breakpoints live on a coarse lattice so that the factorizations built
    from these maps stay a manageable size.  Without ``base`` the lattice's
    own base interval is used.  Identity draws are repeated, and with
    ``max_pieces`` so are draws whose rebased description has more pieces
    than that; the swap factorization grows roughly with its square.
    """
    if base is None:
        base = lattice_base(radicands)
    while True:
        f = _zero_saf_draw(rng, base, factors, k_max, radicands)
        if f.is_identity():
            continue
        if max_pieces is None:
            return f
        from .factor.kernel import rebase_nonneg_integer

        if sum(map(sum, rebase_nonneg_integer(f.lengths).coords)) <= max_pieces:
            return f


def _zero_saf_draw(rng, base, factors, k_max, radicands) -> Iet:
    out = Iet.identity(base)
    for _ in range(factors):
        if rng.random() < 0.5:
            u = random_lattice_iet(rng, base, k_max, radicands)
            v = random_lattice_iet(rng, base, k_max, radicands)
            g = compose_all(base, [invert(u), invert(v), u, v])
        else:
            g = interval_swap(base, random_lattice_swap(rng, base, radicands))
        out = compose(out, g)
    return out


def random_nonzero_saf(rng: random.Random, base: Interval, radicands: Sequence[int] = (1, 2)) -> Iet:
    from .saf import saf

    if all(d == 1 for d in radicands):
        raise ValueError("maps with rational lengths all have zero SAF")
    while True:
        f = random_iet(rng, base, 6, radicands)
        if not saf(f).is_zero():
            return f


def random_wedges(rng: random.Random, n: int, radicands: Sequence[int] = (1, 2)) -> list[tuple[SurdReal, SurdReal]]:
    return [(random_surd(rng, radicands), random_surd(rng, radicands)) for _ in range(n)]


def rotation(base: Interval, a, b, start) -> Iet:
    return restricted_rotation(base, RotationSpec(a, b, start))
