"""The scissors congruence (Sah-Arnoux-Fathi) invariant.

Tensors live in ``R (x)_Q R`` restricted to the span of ``sqrt(d) (x) sqrt(e)``.
Square roots of distinct squarefree integers are independent over Q, so these
products form a basis and a tensor is just its sparse coordinate mapping.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import errors
from .core import Iet, Interval, RotationSpec, compose, restricted_rotation
from .exact import SurdReal, surd


class TensorQQ:
    """Sparse element of ``R (x)_Q R``: ``{(d, e): q}`` means ``q * sqrt(d) (x) sqrt(e)``."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Mapping[tuple[int, int], Fraction] | None = None):
        clean = {}
        for key, q in (entries or {}).items():
            q = Fraction(q)
            if q:
                clean[(int(key[0]), int(key[1]))] = q
        self._entries = clean

    @classmethod
    def _raw(cls, entries: dict) -> "TensorQQ":
        obj = cls.__new__(cls)
        obj._entries = entries
        return obj

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._entries)

    def items(self) -> list[tuple[tuple[int, int], Fraction]]:
        """Entries sorted by ``(d, e)``."""
        return sorted(self._entries.items())

    def is_zero(self) -> bool:
        return not self._entries

    def is_antisymmetric(self) -> bool:
        return all(self._entries.get((e, d), 0) == -q for (d, e), q in self._entries.items())

    def __add__(self, other: "TensorQQ") -> "TensorQQ":
        if not isinstance(other, TensorQQ):
            return NotImplemented
        out = dict(self._entries)
        _accumulate(out, other._entries, 1)
        return TensorQQ._raw(out)

    def __neg__(self) -> "TensorQQ":
        return TensorQQ._raw({k: -q for k, q in self._entries.items()})

    def __sub__(self, other: "TensorQQ") -> "TensorQQ":
        if not isinstance(other, TensorQQ):
            return NotImplemented
        out = dict(self._entries)
        _accumulate(out, other._entries, -1)
        return TensorQQ._raw(out)

    def __mul__(self, q) -> "TensorQQ":
        q = Fraction(q)
        if not q:
            return TensorQQ()
        return TensorQQ._raw({k: v * q for k, v in self._entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorQQ):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self):
        return hash(frozenset(self._entries.items()))

    def __str__(self):
        if not self._entries:
            return "0"
        return " + ".join(f"{q}*(sqrt({d}) x sqrt({e}))" for (d, e), q in self.items())

    def __repr__(self):
        return f"TensorQQ({dict(self.items())})"


def _accumulate(out: dict, entries: Mapping, sign: int) -> None:
    for k, q in entries.items():
        r = out.get(k, 0) + sign * q
        if r:
            out[k] = r
        else:
            out.pop(k, None)


ZERO_TENSOR = TensorQQ()


def tensor_add(s: TensorQQ, t: TensorQQ) -> TensorQQ:
    return s + t


def tensor_neg(s: TensorQQ) -> TensorQQ:
    return -s


def tensor_is_zero(s: TensorQQ) -> bool:
    return s.is_zero()


def tensor(a: SurdReal, b: SurdReal) -> TensorQQ:
    """``a (x) b`` expanded bilinearly."""
    out = {}
    for d, u in a._terms.items():
        for e, v in b._terms.items():
            out[(d, e)] = u * v
    return TensorQQ._raw(out)


def wedge(a: SurdReal, b: SurdReal) -> TensorQQ:
    """``a ^ b = a (x) b - b (x) a``."""
    a, b = surd(a), surd(b)
    out: dict = {}
    for d, u in a._terms.items():
        for e, v in b._terms.items():
            if d == e:
                continue
            uv = u * v
            _accumulate(out, {(d, e): uv, (e, d): -uv}, 1)
    return TensorQQ._raw(out)


def saf(f: Iet) -> TensorQQ:
    """``sum(lambda_i (x) t_i)`` over the subintervals of ``f``."""
    out: dict = {}
    for lam, t in zip(f.lengths, f.translations):
        if t:
            _accumulate(out, tensor(lam, t)._entries, 1)
    return TensorQQ._raw(out)


def saf_of_description(lengths: Sequence[SurdReal], translations: Sequence[SurdReal]) -> TensorQQ:
    """SAF computed from an arbitrary (not necessarily minimal) partition."""
    out: dict = {}
    for lam, t in zip(lengths, translations):
        _accumulate(out, tensor(lam, t)._entries, 1)
    return TensorQQ._raw(out)


# Euclid-type reduction of pairs ------------------------------------------

SUM_BELOW_EPS = "sum_below_eps"
EQUAL_PAIR = "equal_pair"


@dataclass(frozen=True)
class EuclidTrace:
    pairs: tuple[tuple[SurdReal, SurdReal], ...]
    terminal: str

    @property
    def last(self) -> tuple[SurdReal, SurdReal]:
        return self.pairs[-1]

    def __len__(self):
        return len(self.pairs)


def euclid_pairs(a, b, eps) -> EuclidTrace:
    """Subtract the smaller of ``(a, b)`` from the larger until the sum
    drops below ``eps`` or the two become equal (checked in that order)."""
    a, b, eps = surd(a), surd(b), surd(eps)
    if a.sign() <= 0 or b.sign() <= 0 or eps.sign() <= 0:
        raise errors.NonPositiveInput(f"euclid_pairs needs positive inputs, got ({a}, {b}, {eps})")
    pairs = [(a, b)]
    while True:
        if a + b < eps:
            return EuclidTrace(tuple(pairs), SUM_BELOW_EPS)
        if a == b:
            return EuclidTrace(tuple(pairs), EQUAL_PAIR)
        if a > b:
            a = a - b
        else:
            b = b - a
        pairs.append((a, b))


def shrink_wedge(a, b, eps) -> tuple[SurdReal, SurdReal]:
    """Positive ``(a0, b0)`` with ``a0 + b0 < eps`` and ``a0 ^ b0 == a ^ b``."""
    a, b, eps = surd(a), surd(b), surd(eps)
    if eps.sign() <= 0:
        raise errors.NonPositiveInput(f"eps must be positive, got {eps}")
    if wedge(a, b).is_zero():
        c = eps / 4
        return c, c
    if a.sign() < 0 and b.sign() < 0:
        a, b = -a, -b
    elif a.sign() < 0:
        a, b = b, -a
    elif b.sign() < 0:
        a, b = -b, a
    trace = euclid_pairs(a, b, eps)
    # a nonzero wedge rules out the equal-pair ending
    assert trace.terminal == SUM_BELOW_EPS
    return trace.last


def realize_saf(base: Interval, wedges: Iterable[tuple]) -> Iet:
    """A map whose SAF invariant is ``sum(a ^ b for a, b in wedges)``.

    Each wedge is shrunk to fit the base interval and realised by a
    restricted rotation supported at its left end.
    """
    out = Iet.identity(base)
    for a, b in wedges:
        a0, b0 = shrink_wedge(a, b, base.width)
        out = compose(out, restricted_rotation(base, RotationSpec(a0, b0, base.lo)))
    return out
