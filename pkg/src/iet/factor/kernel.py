"""Maps with zero SAF invariant: balanced rotation products, their rewriting
into interval swaps, and the commutator form of the result."""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .. import errors
from ..core import (
    Iet,
    Interval,
    RotationSpec,
    SwapSpec,
    compose,
    invert,
    restricted_rotation,
    translation_on,
)
from ..exact import ZERO, SurdReal, surd, surd_approx, surd_cmp, surd_min
from ..saf import EQUAL_PAIR, euclid_pairs, saf
from .certificates import Commutator, Factorization, product
from .elementary import (
    cycle_swaps,
    default_rotation,
    disjoint_rotation_swaps,
    rotation_step_reduce,
    rotations_for_description,
    swap_as_commutator,
)


# rational linear algebra on surd coordinates --------------------------------

def _coordinate_rows(vectors: Sequence[SurdReal]) -> list[list[Fraction]]:
    radicands = sorted(set().union(*(v.support() for v in vectors))) if vectors else []
    return [[v.coefficient(d) for v in vectors] for d in radicands]


def _row_reduce(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place reduced row echelon form over the first ``ncols`` columns;
    returns the pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                m = rows[i][c]
                rows[i] = [x - m * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return pivots


def rational_rank(vectors: Sequence[SurdReal]) -> int:
    """Dimension of the Q-span of ``vectors``."""
    rows = _coordinate_rows(list(vectors))
    return len(_row_reduce(rows, len(vectors)))


def solve_in_span(basis: Sequence[SurdReal], v: SurdReal) -> list[Fraction] | None:
    """Rational ``c`` with ``v == sum(c_j * basis_j)``, or None if ``v`` is
    outside the span.  ``basis`` must be independent."""
    m = len(basis)
    rows = _coordinate_rows(list(basis) + [v])
    pivots = _row_reduce(rows, m)
    for row in rows[len(pivots):]:
        if row[m]:
            return None
    out = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        out[c] = rows[i][m]
    return out


# rebasing onto independent lengths --------------------------------------

@dataclass(frozen=True)
class Rebase:
    """``L_i == sum(coords[i][j] * basis[j])`` with independent positive
    ``basis`` and nonnegative integer ``coords``."""

    basis: tuple[SurdReal, ...]
    coords: tuple[tuple[int, ...], ...]

    def combination(self, i: int) -> SurdReal:
        out = ZERO
        for c, l in zip(self.coords[i], self.basis):
            out = out + l * c
        return out


def _split_weights(parts: Sequence[SurdReal], neg: SurdReal) -> list[Fraction]:
    """Positive rationals ``r_t`` summing to 1 with ``parts[t] - r_t*neg > 0``.

    Tries dyadic roundings of the proportions ``parts[t] / sum(parts)`` at
    increasing precision; each candidate is checked exactly.
    """
    if len(parts) == 1:
        return [Fraction(1)]
    total = ZERO
    for p in parts:
        total = total + p
    p = 1
    while True:
        bits = 2 * p + 64
        approx_total = surd_approx(total, bits)
        den = 1 << p
        r = [Fraction(round(surd_approx(x, bits) / approx_total * den), den) for x in parts[:-1]]
        r.append(1 - sum(r))
        if all(x > 0 for x in r) and all((x - neg * w).sign() > 0 for x, w in zip(parts, r)):
            return r
        p += 1


def _rational_gcd(values: Sequence[Fraction]) -> Fraction:
    num, den = 0, 1
    for v in values:
        if v:
            num = gcd(num, v.numerator)
            den = den * v.denominator // gcd(den, v.denominator)
    return Fraction(num, den)


def rebase_nonneg_integer(lengths: Sequence) -> Rebase:
    """Independent positive ``l_1..l_m`` expressing every length as a
    nonnegative integer combination.

    Distinct lengths are added one at a time, shortest first.  A length outside the current span
    becomes a new basis element.  A length inside the span is written as
    ``A - B`` (positive and negative parts); each basis element in ``A`` is
    replaced by ``a_t l_t - r_t B``, after which the length is the plain sum
    of the replaced elements and every older coordinate stays nonnegative.
    Finally each basis element is scaled so its column is integral.
    """
    values = [surd(x) for x in lengths]
    for v in values:
        if v.sign() <= 0:
            raise errors.NonPositiveInput(f"length {v} is not positive")
    basis: list[SurdReal] = []
    rows: dict[SurdReal, list[Fraction]] = {}
    # shortest first tends to keep the coordinates small
    for v in sorted(set(values), key=functools.cmp_to_key(surd_cmp)):
        c = solve_in_span(basis, v) if basis else None
        if c is None:
            basis.append(v)
            for row in rows.values():
                row.append(Fraction(0))
            rows[v] = [Fraction(0)] * (len(basis) - 1) + [Fraction(1)]
            continue
        pos = [j for j, x in enumerate(c) if x > 0]
        neg = [j for j, x in enumerate(c) if x < 0]
        if not neg:
            rows[v] = c
            continue
        b_part = ZERO
        for j in neg:
            b_part = b_part + basis[j] * (-c[j])
        r = _split_weights([basis[t] * c[t] for t in pos], b_part)
        for row in rows.values():
            old = list(row)
            for t, rt in zip(pos, r):
                if not old[t]:
                    continue
                row[t] = old[t] / c[t]
                for j in neg:
                    row[j] += old[t] * rt / c[t] * (-c[j])
        for t, rt in zip(pos, r):
            basis[t] = basis[t] * c[t] - b_part * rt
        rows[v] = [Fraction(1) if j in pos else Fraction(0) for j in range(len(basis))]
    m = len(basis)
    scale = [_rational_gcd([row[j] for row in rows.values()]) for j in range(m)]
    new_basis = tuple(basis[j] * scale[j] for j in range(m))
    coords = tuple(
        tuple(int(rows[v][j] / scale[j]) for j in range(m)) for v in values
    )
    return Rebase(new_basis, coords)


# balanced products -------------------------------------------------------

def type_counts(rotations: Sequence[RotationSpec]) -> Counter:
    return Counter((r.a, r.b) for r in rotations)


def is_balanced(rotations: Sequence[RotationSpec]) -> bool:
    counts = type_counts(rotations)
    return all(counts[(b, a)] == n for (a, b), n in counts.items())


def _require_zero_saf(f: Iet) -> None:
    s = saf(f)
    if not s.is_zero():
        raise errors.NonzeroSaf(s)


def balanced_rotations_factorization(f: Iet) -> Factorization:
    """A zero-SAF map as a balanced product of restricted rotations.

    The subintervals are cut into pieces whose lengths lie in an
    independent basis; the rotation factorization of that finer description
    then only uses basis types, and zero SAF forces the counts to match.
    """
    _require_zero_saf(f)
    base = f.base
    if f.is_identity():
        h = default_rotation(base)
        return Factorization(base, [h, h.inverse()], f)
    rb = rebase_nonneg_integer(f.lengths)
    pieces_of = []
    for row in rb.coords:
        pieces = []
        for l, c in zip(rb.basis, row):
            pieces.extend([l] * c)
        pieces_of.append(pieces)
    lengths = [l for pieces in pieces_of for l in pieces]
    rank_of = {}
    r = 1
    for i in f.inverse_perm:
        for n in range(len(pieces_of[i - 1])):
            rank_of[(i - 1, n)] = r
            r += 1
    perm = [rank_of[(i, n)] for i, pieces in enumerate(pieces_of) for n in range(len(pieces))]
    rotations = rotations_for_description(base, lengths, perm)
    if not is_balanced(rotations):
        raise AssertionError("rotation product for a zero-SAF map is not balanced")
    return Factorization(base, rotations, f, {"basis": rb.basis, "pieces": len(lengths)})


# reducing rotation types ---------------------------------------------------

def _reduce(r: RotationSpec, base: Interval, eps: SurdReal) -> tuple[RotationSpec, list[SwapSpec]]:
    # f = head * tail[0] * tail[1] * ...
    trace = euclid_pairs(r.a, r.b, eps)
    cur = r
    steps: list[SwapSpec] = []
    for a_next, b_next in trace.pairs[1:]:
        if cur.a > cur.b:
            _, h, g2 = rotation_step_reduce(cur)
            cur, g = h, g2
        else:
            g1, h, _ = rotation_step_reduce(cur.inverse())
            cur, g = h.inverse(), g1
        assert cur.a == a_next and cur.b == b_next
        steps.append(g)
    tail = steps[::-1]
    if trace.terminal == EQUAL_PAIR:
        a0 = surd_min(eps, base.width) / 4
        head = RotationSpec(a0, a0, base.lo)
        tail = [SwapSpec(a0, base.lo, base.lo + a0), SwapSpec(cur.a, cur.start, cur.start + cur.a)] + tail
        return head, tail
    return cur, tail


def rotation_reduce_small(r: RotationSpec, base: Interval, eps) -> tuple[RotationSpec, Factorization]:
    """``rot(r) = rot(h) * tail`` with ``h`` of type ``(a0, b0)``,
    ``a0 + b0 < eps`` and ``tail`` a product of swaps."""
    eps = surd(eps)
    if eps.sign() <= 0:
        raise errors.NonPositiveInput(f"eps must be positive, got {eps}")
    f = restricted_rotation(base, r)
    head, tail = _reduce(r, base, eps)
    target = compose(invert(restricted_rotation(base, head)), f)
    return head, Factorization(base, tail, target)


def free_pieces(base: Interval, parts: int, blocks: Sequence[tuple[SurdReal, SurdReal]]) -> list[SurdReal]:
    """Left ends of the pieces ``[lo + i*w/parts, lo + (i+1)*w/parts)`` whose
    interiors miss every block, leftmost first."""
    step = base.width / parts
    out = []
    for i in range(parts):
        lo = base.lo + step * i
        hi = lo + step
        if all(not (u < hi and lo < v) for u, v in blocks):
            out.append(lo)
    return out


def _pair_swaps(r1: RotationSpec, r2: RotationSpec, base: Interval) -> list[SwapSpec]:
    # swaps with product r1^-1 r2, for rotations of one type
    fifth = base.width / 5
    if r1.a + r1.b <= fifth:
        blocks = [(r1.start, r1.end), (r2.start, r2.end)]
        f0 = RotationSpec(r1.a, r1.b, free_pieces(base, 5, blocks)[0])
        return disjoint_rotation_swaps(r1, f0) + disjoint_rotation_swaps(f0, r2)
    h1, t1 = _reduce(r1, base, fifth)
    h2, t2 = _reduce(r2, base, fifth)
    return t1[::-1] + _pair_swaps(h1, h2, base) + t2


def rotation_pair_to_swaps(r1: RotationSpec, r2: RotationSpec, base: Interval) -> Factorization:
    """``rot(r1)^-1 rot(r2)`` as swaps, for rotations of the same type."""
    if r1.a != r2.a or r1.b != r2.b:
        raise errors.TypeMismatch(f"rotation types differ: ({r1.a}, {r1.b}) vs ({r2.a}, {r2.b})")
    target = compose(invert(restricted_rotation(base, r1)), restricted_rotation(base, r2))
    return Factorization(base, _pair_swaps(r1, r2, base), target)


def _commutator_swaps(r: RotationSpec, g: Iet, base: Interval) -> list[SwapSpec]:
    # swaps with product r^-1 g^-1 r g
    ginv = invert(g)
    t = translation_on(ginv, r.start, r.end)
    if t is not None:
        return _pair_swaps(r, RotationSpec(r.a, r.b, r.start + t), base)
    widest = 0
    for i, lam in enumerate(ginv.lengths):
        if lam > ginv.lengths[widest]:
            widest = i
    c, eps = ginv.starts[widest], ginv.lengths[widest]
    f0, g0 = _reduce(r, base, eps)
    f1 = RotationSpec(f0.a, f0.b, c)
    out = g0[::-1]
    out += _pair_swaps(f0, f1, base)
    out += _commutator_swaps(f1, g, base)
    for h in _pair_swaps(f1, f0, base) + g0:
        conj = compose(ginv, compose(h.to_iet(base), g))
        out += cycle_swaps(conj)
    return out


def rotation_commutator_to_swaps(r: RotationSpec, g: Iet, base: Interval) -> Factorization:
    """The commutator ``rot(r)^-1 g^-1 rot(r) g`` as a product of swaps."""
    f = restricted_rotation(base, r)
    target = compose(invert(f), compose(invert(g), compose(f, g)))
    return Factorization(base, _commutator_swaps(r, g, base), target)


def _balanced_swaps(rotations: Sequence[RotationSpec], base: Interval) -> list[SwapSpec]:
    rest = list(rotations)
    out: list[SwapSpec] = []
    while rest:
        f1 = rest[0]
        if f1.a == f1.b:
            out.append(SwapSpec(f1.a, f1.start, f1.start + f1.a))
            rest = rest[1:]
            continue
        k = next(i for i in range(1, len(rest)) if rest[i].a == f1.b and rest[i].b == f1.a)
        fk = rest[k]
        middle = rest[1:k]
        # f = (f1 fk)(fk^-1 g1 fk g1^-1)(g1 g2)
        out += _pair_swaps(f1.inverse(), fk, base)
        if middle:
            g1 = product(base, middle)
            out += _commutator_swaps(fk, invert(g1), base)
        rest = middle + rest[k + 1:]
    return out


def balanced_to_swaps(rotations: Sequence[RotationSpec], base: Interval) -> Factorization:
    """A balanced product of restricted rotations rewritten as swaps."""
    rotations = list(rotations)
    if not is_balanced(rotations):
        raise errors.NotBalanced("type (a, b) and (b, a) counts differ")
    return Factorization(base, _balanced_swaps(rotations, base), product(base, rotations))


def zero_saf_to_swaps(f: Iet) -> Factorization:
    """A map with zero SAF invariant as a product of interval swaps."""
    balanced = balanced_rotations_factorization(f)
    swaps = _balanced_swaps(balanced.factors, f.base)
    return Factorization(f.base, swaps, f, {"rotations": len(balanced.factors)})


def zero_saf_to_commutators(f: Iet) -> Factorization:
    """A map with zero SAF invariant as a product of commutators of
    involutions, one per swap of :func:`zero_saf_to_swaps`."""
    swaps = zero_saf_to_swaps(f)
    factors = [Commutator(*swap_as_commutator(s, f.base)) for s in swaps.factors]
    return Factorization(f.base, factors, f, {"swaps": len(swaps.factors)})
