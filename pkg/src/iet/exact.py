"""Exact reals of the form ``q_1 + q_2*sqrt(2) + q_3*sqrt(3) + ...``.

A :class:`SurdReal` is a finite rational combination of square roots of
distinct squarefree positive integers.  Those roots are linearly independent
over the rationals, so two values are equal exactly when their coefficient
mappings agree, and every nonzero value has a decidable sign.  Only the
operations of a rational vector space (plus ordering) are provided.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Union

from .errors import ParseError

Rational = Fraction
RationalLike = Union[int, Fraction]

SIGN_START_BITS = 64


@lru_cache(maxsize=4096)
def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k*k*d`` and ``d`` squarefree."""
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    k, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    return k, d * n


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_decomposition(n)[0] == 1


@lru_cache(maxsize=65536)
def _isqrt_scaled(d: int, bits: int) -> int:
    # floor(sqrt(d) * 2**bits)
    return math.isqrt(d << (2 * bits))


def _sign_of_ints(num: Mapping[int, int]) -> int:
    # sign of sum(c * sqrt(d)) for integer c
    if not num:
        return 0
    if len(num) == 1:
        (c,) = num.values()
        return 1 if c > 0 else -1
    bits = SIGN_START_BITS
    while True:
        lo = hi = 0
        for d, c in num.items():
            if d == 1:
                v = c << bits
                lo += v
                hi += v
                continue
            s = _isqrt_scaled(d, bits)
            if c > 0:
                lo += c * s
                hi += c * (s + 1)
            else:
                lo += c * (s + 1)
                hi += c * s
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2


def _as_fraction(q) -> Fraction | None:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int) and not isinstance(q, bool):
        return Fraction(q)
    return None


def _normalized(num: dict[int, int], den: int) -> tuple[dict[int, int], int]:
    if not num:
        return num, 1
    g = den
    for c in num.values():
        g = math.gcd(g, c)
        if g == 1:
            return num, den
    return {d: c // g for d, c in num.items()}, den // g


class SurdReal:
    """Immutable exact real ``sum(q_d * sqrt(d))``.

    Stored as integer numerators over one positive common denominator, in
    lowest terms, so equality is plain structural comparison.

    >>> x = SurdReal.sqrt(8) - 2
    >>> str(x)
    '-2 + 2*sqrt(2)'
    >>> x.sign()
    1
    """

    __slots__ = ("_num", "_den", "_key", "_sign", "_fractions")

    def __init__(self, terms: Mapping[int, RationalLike] | RationalLike | str | None = None):
        if terms is None:
            terms = {}
        elif isinstance(terms, str):
            parsed = parse_surd(terms)
            self._init(parsed._num, parsed._den)
            return
        elif not isinstance(terms, Mapping):
            q = _as_fraction(terms)
            if q is None:
                raise TypeError(f"cannot build SurdReal from {terms!r}")
            terms = {1: q}
        clean: dict[int, Fraction] = {}
        for d, q in terms.items():
            q = Fraction(q)
            if not q:
                continue
            k, e = squarefree_decomposition(int(d))
            clean[e] = clean.get(e, 0) + q * k
        other = SurdReal._raw(clean)
        self._init(other._num, other._den)

    def _init(self, num: dict[int, int], den: int) -> None:
        self._num = num
        self._den = den
        self._key = None
        self._sign = None
        self._fractions = None

    @classmethod
    def _from_ints(cls, num: dict[int, int], den: int) -> "SurdReal":
        # trusted: keys squarefree, no zero numerators, den > 0
        obj = cls.__new__(cls)
        obj._init(*_normalized(num, den))
        return obj

    @classmethod
    def _raw(cls, terms: Mapping[int, Fraction]) -> "SurdReal":
        # trusted: keys squarefree
        den = 1
        for q in terms.values():
            den = den * q.denominator // math.gcd(den, q.denominator)
        num = {}
        for d, q in terms.items():
            if q:
                num[d] = q.numerator * (den // q.denominator)
        return cls._from_ints(num, den)

    @classmethod
    def rational(cls, q: RationalLike) -> "SurdReal":
        q = Fraction(q)
        if not q:
            return ZERO
        obj = cls.__new__(cls)
        obj._init({1: q.numerator}, q.denominator)
        return obj

    @classmethod
    def sqrt(cls, n: int) -> "SurdReal":
        if n == 0:
            return ZERO
        k, d = squarefree_decomposition(n)
        return cls._from_ints({d: k}, 1)

    @property
    def _terms(self) -> dict[int, Fraction]:
        if self._fractions is None:
            self._fractions = {d: Fraction(c, self._den) for d, c in self._num.items()}
        return self._fractions

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def coefficient(self, d: int) -> Fraction:
        return Fraction(self._num.get(d, 0), self._den)

    def support(self) -> frozenset[int]:
        return frozenset(self._num)

    def is_rational(self) -> bool:
        return not self._num or (len(self._num) == 1 and 1 in self._num)

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self._num.get(1, 0), self._den)

    # arithmetic -------------------------------------------------------

    def _combine(self, other: "SurdReal", sign: int) -> "SurdReal":
        if not other._num:
            return self
        a, b = self._den, other._den
        if a == b:
            out = dict(self._num)
            for d, c in other._num.items():
                r = out.get(d, 0) + sign * c
                if r:
                    out[d] = r
                else:
                    del out[d]
            return SurdReal._from_ints(out, a)
        g = math.gcd(a, b)
        ma, mb = b // g, sign * (a // g)
        out = {d: c * ma for d, c in self._num.items()}
        for d, c in other._num.items():
            r = out.get(d, 0) + c * mb
            if r:
                out[d] = r
            else:
                del out[d]
        return SurdReal._from_ints(out, a * ma)

    def __add__(self, other) -> "SurdReal":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self._num:
            return other
        return self._combine(other, 1)

    __radd__ = __add__

    def __neg__(self) -> "SurdReal":
        obj = SurdReal.__new__(SurdReal)
        obj._init({d: -c for d, c in self._num.items()}, self._den)
        return obj

    def __pos__(self) -> "SurdReal":
        return self

    def __sub__(self, other) -> "SurdReal":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self._num:
            return -other
        return self._combine(other, -1)

    def __rsub__(self, other) -> "SurdReal":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, q) -> "SurdReal":
        q = _as_fraction(q)
        if q is None:
            return NotImplemented
        return surd_scale(q, self)

    __rmul__ = __mul__

    def __truediv__(self, q) -> "SurdReal":
        q = _as_fraction(q)
        if q is None:
            return NotImplemented
        return surd_scale(1 / q, self)

    def __abs__(self) -> "SurdReal":
        return -self if self.sign() < 0 else self

    # ordering ---------------------------------------------------------

    def sign(self) -> int:
        if self._sign is None:
            self._sign = _sign_of_ints(self._num)
        return self._sign

    def __bool__(self) -> bool:
        return bool(self._num)

    def _key_tuple(self):
        if self._key is None:
            self._key = (tuple(sorted(self._num.items())), self._den)
        return self._key

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._den == other._den and self._num == other._num

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(Fraction(self._num.get(1, 0), self._den))
        return hash(self._key_tuple())

    def _cmp(self, other) -> int:
        other = _coerce(other)
        if other is None:
            raise TypeError
        return surd_cmp(self, other)

    def __lt__(self, other) -> bool:
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other) -> bool:
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other) -> bool:
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other) -> bool:
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __str__(self) -> str:
        return format_surd(self)

    def __repr__(self) -> str:
        return f"SurdReal('{format_surd(self)}')"

    def __reduce__(self):
        return (SurdReal, (self.terms,))


def _coerce(x) -> SurdReal | None:
    if isinstance(x, SurdReal):
        return x
    q = _as_fraction(x)
    if q is None:
        return None
    return SurdReal.rational(q)


ZERO = SurdReal._from_ints({}, 1)
ONE = SurdReal._from_ints({1: 1}, 1)


def surd_add(x: SurdReal, y: SurdReal) -> SurdReal:
    return x + y


def surd_scale(q: RationalLike, x: SurdReal) -> SurdReal:
    q = Fraction(q)
    if not q:
        return ZERO
    if q == 1:
        return x
    num, den = q.numerator, q.denominator
    return SurdReal._from_ints({d: c * num for d, c in x._num.items()}, x._den * den)


def surd_sign(x: SurdReal) -> int:
    """Exact sign via dyadic enclosures, doubling the precision until
    the enclosure excludes zero."""
    return x.sign()


def surd_cmp(x: SurdReal, y: SurdReal) -> int:
    """Return -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``."""
    x, y = surd(x), surd(y)
    if x._den == y._den:
        if x._num == y._num:
            return 0
        out = dict(x._num)
        for d, c in y._num.items():
            r = out.get(d, 0) - c
            if r:
                out[d] = r
            else:
                del out[d]
        return _sign_of_ints(out)
    return (x - y).sign()


def surd_approx(x: SurdReal, bits: int) -> Fraction:
    """A rational within ``sum(|q_d|) * 2**-bits`` of ``x``."""
    out = Fraction(0)
    for d, q in x._terms.items():
        if d == 1:
            out += q
        else:
            out += q * Fraction(_isqrt_scaled(d, bits), 1 << bits)
    return out


def surd_min(*xs: SurdReal) -> SurdReal:
    best = xs[0]
    for x in xs[1:]:
        if x < best:
            best = x
    return best


def surd_max(*xs: SurdReal) -> SurdReal:
    best = xs[0]
    for x in xs[1:]:
        if x > best:
            best = x
    return best


# text ---------------------------------------------------------------

_TERM = re.compile(r"(?:(\d+)(?:/(\d+))?(?:\*sqrt\((\d+)\))?|sqrt\((\d+)\))")


def parse_surd(text: str) -> SurdReal:
    """Parse ``term (('+'|'-') term)*``; whitespace is ignored.

    >>> parse_surd("1/2 + 3/4*sqrt(2)").terms
    {1: Fraction(1, 2), 2: Fraction(3, 4)}
    >>> parse_surd("sqrt(8)").terms
    {2: Fraction(2, 1)}
    """
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    s = "".join(text.split())
    if not s:
        raise ParseError("empty surd expression")
    terms: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(s):
        sign = 1
        if s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' at offset {pos} in {text!r}")
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"malformed term at offset {pos} in {text!r}")
        num, den, rad, bare = m.groups()
        if bare is not None:
            coeff = Fraction(1)
            radicand = int(bare)
        else:
            if den is not None and int(den) == 0:
                raise ParseError(f"zero denominator in {text!r}")
            coeff = Fraction(int(num), int(den) if den is not None else 1)
            radicand = int(rad) if rad is not None else 1
        if radicand != 0 and coeff:
            k, d = squarefree_decomposition(radicand)
            terms[d] = terms.get(d, 0) + sign * coeff * k
        pos = m.end()
        first = False
    return SurdReal._raw({d: q for d, q in terms.items() if q})


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_surd(x: SurdReal) -> str:
    """Canonical text: terms by increasing radicand, rational part bare."""
    if not x._terms:
        return "0"
    parts = []
    for i, d in enumerate(sorted(x._terms)):
        q = x._terms[d]
        neg = q < 0
        a = -q if neg else q
        if d == 1:
            body = _format_rational(a)
        elif a == 1:
            body = f"sqrt({d})"
        else:
            body = f"{_format_rational(a)}*sqrt({d})"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def surd(value) -> SurdReal:
    """Coerce text, ints, fractions or SurdReal into a SurdReal."""
    if isinstance(value, SurdReal):
        return value
    if isinstance(value, str):
        return parse_surd(value)
    q = _as_fraction(value)
    if q is None:
        raise TypeError(f"cannot interpret {value!r} as a surd")
    return SurdReal.rational(q)
