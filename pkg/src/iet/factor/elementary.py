"""Elementary constructions with restricted rotations and interval swaps."""

from __future__ import annotations

import functools
from typing import Sequence

from .. import errors
from ..core import (
    DEFAULT_MAX_ORDER,
    Iet,
    Interval,
    RotationSpec,
    SwapSpec,
    compose,
    interval_swap,
    invert,
    order,
    restricted_rotation,
    to_cycles,
)
from ..exact import SurdReal, surd, surd_cmp, surd_min
from .certificates import Factorization


def default_rotation(base: Interval) -> RotationSpec:
    """The fixed rotation ``h`` used when a proof says "take any rotation"."""
    q = base.width / 4
    return RotationSpec(q, q, base.lo)


def default_swap(base: Interval) -> SwapSpec:
    q = base.width / 4
    return SwapSpec(q, base.lo, base.lo + q)


def _disjoint(blocks: Sequence[tuple[SurdReal, SurdReal]]) -> bool:
    for i, (lo1, hi1) in enumerate(blocks):
        for lo2, hi2 in blocks[i + 1:]:
            if lo1 < hi2 and lo2 < hi1:
                return False
    return True


# rotations ------------------------------------------------------------

def compose_perms(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """``(p q)(i) = p(q(i))`` in one-line form."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def adjacent_transpositions(perm: Sequence[int]) -> list[int]:
    """Indices ``i_1, ..., i_m`` with ``perm = t_{i_1} t_{i_2} ... t_{i_m}``,
    where ``t_i`` exchanges ``i`` and ``i + 1``.

    Cycles ``(n_1 ... n_m)`` become ``(n_1 n_2)(n_2 n_3)...(n_{m-1} n_m)`` and
    each ``(n l)`` with ``n < l`` becomes ``t_n ... t_{l-1} ... t_n``.  The
    identity on two or more letters is written ``t_1 t_1``.
    """
    cycles = to_cycles(perm)
    if not cycles:
        return [1, 1] if len(perm) >= 2 else []
    out: list[int] = []
    for cyc in cycles:
        for n, l in zip(cyc, cyc[1:]):
            n, l = min(n, l), max(n, l)
            out.extend(range(n, l))
            out.extend(range(l - 2, n - 1, -1))
    return out


def rotations_for_description(base: Interval, lengths: Sequence[SurdReal], perm: Sequence[int]) -> list[RotationSpec]:
    """Restricted rotations whose product is the map ``(lengths, perm)``.

    With ``perm = s_1 ... s_m`` (adjacent transpositions) the j-th factor is
    the exchange with description ``(lambda^(j), s_j)``, where
    ``lambda^(j)`` is ``lengths`` rearranged by ``s_{j+1} ... s_m``.
    """
    k = len(lengths)
    if k < 2:
        h = default_rotation(base)
        return [h, h.inverse()]
    sigma = adjacent_transpositions(perm)
    out: list[RotationSpec] = []
    lam = list(lengths)
    starts = [base.lo]
    for x in lam[:-1]:
        starts.append(starts[-1] + x)
    for i in reversed(sigma):
        out.append(RotationSpec(lam[i - 1], lam[i], starts[i - 1]))
        # tau <- t_i tau: the two lengths trade places, one start moves
        lam[i - 1], lam[i] = lam[i], lam[i - 1]
        starts[i] = starts[i - 1] + lam[i - 1]
    out.reverse()
    return out


def rotations_factorization(f: Iet) -> Factorization:
    """``f`` as a product of restricted rotations whose types use only the
    lengths of its subintervals (for ``k >= 2``)."""
    return Factorization(f.base, rotations_for_description(f.base, f.lengths, f.perm), f)


# finite order -------------------------------------------------------------

def invariant_partition(f: Iet) -> list[SurdReal]:
    """Sorted left endpoints of the coarsest partition permuted by ``f``.

    It is the union of the orbits of ``f``'s breakpoints; ``f`` must have
    finite order or this does not terminate.
    """
    points = set(f.starts)
    queue = list(f.starts)
    while queue:
        q = f(queue.pop())
        if q not in points:
            points.add(q)
            queue.append(q)
    return sorted(points, key=functools.cmp_to_key(surd_cmp))


def cycle_swaps(f: Iet) -> list[SwapSpec]:
    """Swaps for a map of known finite order, or ``[]`` for the identity."""
    if f.is_identity():
        return []
    starts = invariant_partition(f)
    ends = starts[1:] + [f.base.hi]
    index = {x: i for i, x in enumerate(starts)}
    nxt = [index[f(x)] for x in starts]
    seen = [False] * len(starts)
    out: list[SwapSpec] = []
    for i in range(len(starts)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = nxt[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = nxt[j]
        if len(cyc) < 2:
            continue
        a = ends[i] - starts[i]
        for p, q in zip(cyc, cyc[1:]):
            out.append(SwapSpec(a, starts[p], starts[q]))
    return out


def finite_order_to_swaps(f: Iet, max_iter: int = DEFAULT_MAX_ORDER) -> Factorization:
    """A map of finite order as a product of interval swaps.

    Each cycle ``J_1 -> J_2 -> ... -> J_k -> J_1`` of the invariant partition
    contributes the swaps ``(J_1 J_2), (J_2 J_3), ..., (J_{k-1} J_k)``.
    """
    res = order(f, max_iter)
    if res.kind == "infinite":
        raise errors.NotFiniteOrder("map has nonzero SAF invariant, so infinite order")
    if res.kind == "bound_exceeded":
        raise errors.BoundExceeded(max_iter)
    swaps = cycle_swaps(f)
    if not swaps:
        h = default_swap(f.base)
        swaps = [h, h]
    return Factorization(f.base, swaps, f, {"order": res.n})


# commutators and conjugators -------------------------------------------

def swap_as_commutator(s: SwapSpec, base: Interval) -> tuple[Iet, Iet]:
    """Involutions ``(g3, g)`` with ``s = g3^-1 g^-1 g3 g``."""
    interval_swap(base, s)
    h = s.a / 2
    x, y = s.x, s.y
    g1 = interval_swap(base, SwapSpec(h, x, x + h))
    g2 = interval_swap(base, SwapSpec(h, y, y + h))
    g3 = interval_swap(base, SwapSpec(h, x, y))
    return g3, compose(g1, g2)


def conjugator_for_disjoint_swaps(s1: SwapSpec, s2: SwapSpec, base: Interval) -> Iet:
    """An involution ``g`` with ``s2 = g s1 g`` for same-type swaps with
    pairwise disjoint blocks."""
    if s1.a != s2.a:
        raise errors.TypeMismatch(f"swap types differ: {s1.a} vs {s2.a}")
    a = s1.a
    interval_swap(base, s1)
    interval_swap(base, s2)
    if not _disjoint([(s1.x, s1.x + a), (s1.y, s1.y + a), (s2.x, s2.x + a), (s2.y, s2.y + a)]):
        raise errors.OverlappingSupports("swap supports overlap")
    g1 = interval_swap(base, SwapSpec(a, s1.x, s2.x))
    g2 = interval_swap(base, SwapSpec(a, s1.y, s2.y))
    return compose(g1, g2)


def _check_same_type(r1: RotationSpec, r2: RotationSpec) -> None:
    if r1.a != r2.a or r1.b != r2.b:
        raise errors.TypeMismatch(f"rotation types differ: ({r1.a}, {r1.b}) vs ({r2.a}, {r2.b})")


def disjoint_rotation_swaps(r1: RotationSpec, r2: RotationSpec) -> list[SwapSpec]:
    """Three swaps ``[g3, g2, g1]`` with ``r1^-1 r2 = g3 g2 g1``."""
    a, b = r1.a, r1.b
    x, y = r1.start, r2.start
    g1 = SwapSpec(a, x + b, y)
    g2 = SwapSpec(b, x, y + a)
    g3 = SwapSpec(a + b, x, y)
    return [g3, g2, g1]


def disjoint_rotations_to_swaps(r1: RotationSpec, r2: RotationSpec, base: Interval) -> Factorization:
    _check_same_type(r1, r2)
    f1 = restricted_rotation(base, r1)
    f2 = restricted_rotation(base, r2)
    if r1.support().overlaps(r2.support()):
        raise errors.OverlappingSupports("rotation supports overlap")
    return Factorization(base, disjoint_rotation_swaps(r1, r2), compose(invert(f1), f2))


def rotation_step_reduce(r: RotationSpec, base: Interval | None = None) -> tuple[SwapSpec, RotationSpec, SwapSpec]:
    """For type ``(a, b)`` with ``a > b``: swaps ``g1, g2`` and the rotation
    ``h`` of type ``(a - b, b)`` on ``[x, x + a)`` with ``g1 f = f g2 = h``."""
    a, b, x = r.a, r.b, r.start
    if not a > b:
        raise errors.PreconditionAB(f"need a > b, got ({a}, {b})")
    if base is not None:
        restricted_rotation(base, r)
    g1 = SwapSpec(b, x, x + a)
    g2 = SwapSpec(b, x + a - b, x + a)
    h = RotationSpec(a - b, b, x)
    return g1, h, g2


def small_swap_threshold(f: Iet) -> tuple[SurdReal, SurdReal, SurdReal]:
    """``(eps0, x, t)`` for the leftmost subinterval ``[x, y)`` moved by a
    nonzero ``t``; ``eps0 = min(y - x, |t|)``."""
    for x, lam, t in zip(f.starts, f.lengths, f.translations):
        if t:
            return surd_min(lam, abs(t)), x, t
    raise errors.IdentityInput("the identity moves no interval")


def small_swap_from_nontrivial(f: Iet, eps) -> tuple[SwapSpec, SwapSpec, SwapSpec]:
    """Swaps ``g1, g2`` of type ``eps/2`` such that
    ``g2 f^-1 g1 f g1 g2`` is the swap of type ``eps`` returned third."""
    eps = surd(eps)
    eps0, x, t = small_swap_threshold(f)
    if not (eps.sign() > 0 and eps < eps0):
        raise errors.EpsTooLarge(eps0)
    h = eps / 2
    g1 = SwapSpec(h, x + t, x + t + h)
    g2 = SwapSpec(h, x + h, x + t)
    result = SwapSpec(eps, x, x + t) if t.sign() > 0 else SwapSpec(eps, x + t, x)
    return g1, g2, result
