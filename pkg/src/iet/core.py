"""Interval exchange transformations as exact group elements.

An :class:`Iet` on ``[lo, hi)`` is stored by its combinatorial description:
the lengths of the subintervals from left to right and a permutation in
one-line form, where ``perm[i]`` is the left-to-right rank (1-based) of the
image of the ``i``-th subinterval.  Every constructor returns the unique
minimal description, so equality of maps is equality of data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import errors
from .exact import ZERO, SurdReal, surd, surd_cmp

DEFAULT_MAX_ORDER = 4096


@dataclass(frozen=True)
class Interval:
    """Half-closed interval ``[lo, hi)``."""

    lo: SurdReal
    hi: SurdReal

    def __post_init__(self):
        object.__setattr__(self, "lo", surd(self.lo))
        object.__setattr__(self, "hi", surd(self.hi))
        if not self.lo < self.hi:
            raise errors.EmptyInterval(f"[{self.lo}, {self.hi}) is empty")

    @property
    def width(self) -> SurdReal:
        return self.hi - self.lo

    def contains(self, x: SurdReal) -> bool:
        return self.lo <= x < self.hi

    def contains_interval(self, lo: SurdReal, hi: SurdReal) -> bool:
        return self.lo <= lo and hi <= self.hi

    def overlaps(self, other: "Interval") -> bool:
        return self.lo < other.hi and other.lo < self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi})"


@dataclass(frozen=True)
class RotationSpec:
    """Restricted rotation of type ``(a, b)``: exchanges ``[start, start+a)``
    with the adjacent ``[start+a, start+a+b)``."""

    a: SurdReal
    b: SurdReal
    start: SurdReal

    def __post_init__(self):
        for name in ("a", "b", "start"):
            object.__setattr__(self, name, surd(getattr(self, name)))
        if self.a.sign() <= 0 or self.b.sign() <= 0:
            raise errors.NonPositiveLength(f"rotation type ({self.a}, {self.b}) must be positive")

    @property
    def type(self) -> tuple[SurdReal, SurdReal]:
        return (self.a, self.b)

    @property
    def end(self) -> SurdReal:
        return self.start + self.a + self.b

    def support(self) -> Interval:
        return Interval(self.start, self.end)

    def inverse(self) -> "RotationSpec":
        return RotationSpec(self.b, self.a, self.start)

    def to_iet(self, base: Interval) -> "Iet":
        return restricted_rotation(base, self)


@dataclass(frozen=True)
class SwapSpec:
    """Interval swap of type ``a``: interchanges ``[x, x+a)`` and ``[y, y+a)``."""

    a: SurdReal
    x: SurdReal
    y: SurdReal

    def __post_init__(self):
        for name in ("a", "x", "y"):
            object.__setattr__(self, name, surd(getattr(self, name)))
        if self.a.sign() <= 0:
            raise errors.NonPositiveLength(f"swap type {self.a} must be positive")

    @property
    def type(self) -> SurdReal:
        return self.a

    def blocks(self) -> tuple[Interval, Interval]:
        return (Interval(self.x, self.x + self.a), Interval(self.y, self.y + self.a))

    def to_iet(self, base: Interval) -> "Iet":
        return interval_swap(base, self)


@dataclass(frozen=True)
class OrderResult:
    kind: str  # "finite" | "infinite" | "bound_exceeded"
    n: int | None = None

    @classmethod
    def finite(cls, n: int) -> "OrderResult":
        return cls("finite", n)

    @classmethod
    def infinite(cls) -> "OrderResult":
        return cls("infinite")

    @classmethod
    def bound_exceeded(cls, bound: int) -> "OrderResult":
        return cls("bound_exceeded", bound)

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self):
        if self.kind == "finite":
            return f"finite {self.n}"
        if self.kind == "infinite":
            return "infinite"
        return f"bound-exceeded {self.n}"


def _check_permutation(perm: Sequence[int], k: int) -> tuple[int, ...]:
    perm = tuple(int(p) for p in perm)
    if len(perm) != k or sorted(perm) != list(range(1, k + 1)):
        raise errors.InvalidPermutation(f"{list(perm)} is not a permutation of 1..{k}")
    return perm


def _canonical(lengths: list[SurdReal], perm: list[int]) -> tuple[tuple, tuple]:
    # Adjacent blocks share a translation iff their image ranks are consecutive.
    groups_len: list[SurdReal] = []
    groups_lead: list[int] = []
    prev = None
    for lam, p in zip(lengths, perm):
        if prev is not None and p == prev + 1:
            groups_len[-1] = groups_len[-1] + lam
        else:
            groups_len.append(lam)
            groups_lead.append(p)
        prev = p
    order = sorted(range(len(groups_lead)), key=groups_lead.__getitem__)
    rank = [0] * len(order)
    for r, i in enumerate(order, start=1):
        rank[i] = r
    return tuple(groups_len), tuple(rank)


class Iet:
    """An interval exchange transformation of ``base``.

    ``Iet(base, lengths, perm)`` validates its input and stores the minimal
    description.  ``f(x)`` evaluates, ``f * g`` composes (``g`` first) and
    ``f == g`` compares maps.
    """

    __slots__ = ("base", "lengths", "perm", "_starts", "_translations", "_inverse_perm", "_hash")

    def __init__(self, base: Interval, lengths: Iterable, perm: Sequence[int]):
        lengths = [surd(x) for x in lengths]
        if not lengths:
            raise errors.InvalidPermutation("at least one subinterval is required")
        for lam in lengths:
            if lam.sign() <= 0:
                raise errors.NonPositiveLength(f"length {lam} is not positive")
        total = ZERO
        for lam in lengths:
            total = total + lam
        if total != base.width:
            raise errors.LengthSumMismatch(f"lengths sum to {total}, base width is {base.width}")
        perm = _check_permutation(perm, len(lengths))
        self._set(base, *_canonical(lengths, list(perm)))

    def _set(self, base, lengths, perm):
        self.base = base
        self.lengths = lengths
        self.perm = perm
        self._starts = None
        self._translations = None
        self._inverse_perm = None
        self._hash = None

    @classmethod
    def _trusted(cls, base: Interval, lengths, perm) -> "Iet":
        obj = cls.__new__(cls)
        obj._set(base, *_canonical(list(lengths), list(perm)))
        return obj

    @classmethod
    def identity(cls, base: Interval) -> "Iet":
        return cls._trusted(base, [base.width], [1])

    # derived data -----------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.lengths)

    @property
    def starts(self) -> tuple[SurdReal, ...]:
        """Left endpoints of the subintervals."""
        if self._starts is None:
            out = []
            pos = self.base.lo
            for lam in self.lengths:
                out.append(pos)
                pos = pos + lam
            self._starts = tuple(out)
        return self._starts

    @property
    def inverse_perm(self) -> tuple[int, ...]:
        if self._inverse_perm is None:
            inv = [0] * self.k
            for i, p in enumerate(self.perm, start=1):
                inv[p - 1] = i
            self._inverse_perm = tuple(inv)
        return self._inverse_perm

    @property
    def translations(self) -> tuple[SurdReal, ...]:
        if self._translations is None:
            image_start = [None] * self.k
            pos = self.base.lo
            for i in self.inverse_perm:
                image_start[i - 1] = pos
                pos = pos + self.lengths[i - 1]
            self._translations = tuple(s - x for s, x in zip(image_start, self.starts))
        return self._translations

    def blocks(self) -> list[tuple[Interval, SurdReal]]:
        return [
            (Interval(x, x + lam), t)
            for x, lam, t in zip(self.starts, self.lengths, self.translations)
        ]

    def is_identity(self) -> bool:
        return self.k == 1

    def block_index(self, x: SurdReal) -> int:
        """Index of the subinterval containing ``x``."""
        x = surd(x)
        if not self.base.contains(x):
            raise errors.PointOutsideDomain(f"{x} is outside {self.base}")
        starts = self.starts
        lo, hi = 0, len(starts)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if starts[mid] <= x:
                lo = mid
            else:
                hi = mid
        return lo

    # group structure --------------------------------------------------

    def __call__(self, x) -> SurdReal:
        x = surd(x)
        return x + self.translations[self.block_index(x)]

    def __mul__(self, other: "Iet") -> "Iet":
        if not isinstance(other, Iet):
            return NotImplemented
        return compose(self, other)

    def __pow__(self, n: int) -> "Iet":
        base = self if n >= 0 else self.inverse()
        out = Iet.identity(self.base)
        for _ in range(abs(n)):
            out = compose(base, out)
        return out

    def inverse(self) -> "Iet":
        return invert(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Iet):
            return NotImplemented
        return self.base == other.base and self.perm == other.perm and self.lengths == other.lengths

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, self.lengths, self.perm))
        return self._hash

    def __repr__(self):
        lens = ", ".join(str(x) for x in self.lengths)
        return f"Iet({self.base}, lengths=({lens}), perm={list(self.perm)})"


def iet_new(base: Interval, lengths: Iterable, perm: Sequence[int]) -> Iet:
    return Iet(base, lengths, perm)


def apply(f: Iet, x) -> SurdReal:
    """``f(x)``: ``x`` plus the translation of the subinterval holding it."""
    return f(x)


def from_cycles(k: int, cycles: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """One-line form of a permutation of ``1..k`` given by cycles
    (``(1 2 4 3)`` sends 1 to 2, 2 to 4, 4 to 3 and 3 to 1)."""
    perm = list(range(1, k + 1))
    seen = set()
    for cyc in cycles:
        cyc = [int(c) for c in cyc]
        for c in cyc:
            if not 1 <= c <= k or c in seen:
                raise errors.InvalidPermutation(f"bad cycle {cyc} for k={k}")
            seen.add(c)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            perm[a - 1] = b
    return tuple(perm)


def to_cycles(perm: Sequence[int]) -> list[list[int]]:
    """Cycles of length at least two, each starting at its smallest element."""
    seen = set()
    out = []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start - 1]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j - 1]
        if len(cyc) > 1:
            out.append(cyc)
    return out


def from_translations(base: Interval, lengths: Sequence[SurdReal], translations: Sequence[SurdReal]) -> Iet:
    """Build a map from subinterval lengths and their translations.

    The images must tile ``base``; this is checked exactly.
    """
    starts = []
    pos = base.lo
    for lam in lengths:
        if lam.sign() <= 0:
            raise errors.NonPositiveLength(f"length {lam} is not positive")
        starts.append(pos)
        pos = pos + lam
    if pos != base.hi:
        raise errors.LengthSumMismatch(f"lengths end at {pos}, base ends at {base.hi}")
    images = [x + t for x, t in zip(starts, translations)]
    order = sorted(range(len(lengths)), key=_cmp_key(images))
    pos = base.lo
    for i in order:
        if images[i] != pos:
            raise errors.OverlappingBlocks("translated subintervals do not tile the base interval")
        pos = pos + lengths[i]
    perm = [0] * len(lengths)
    for r, i in enumerate(order, start=1):
        perm[i] = r
    return Iet._trusted(base, lengths, perm)


def _cmp_key(values):
    import functools

    return functools.cmp_to_key(lambda i, j: surd_cmp(values[i], values[j]))


def compose(f: Iet, g: Iet) -> Iet:
    """The map ``x -> f(g(x))``."""
    if f.base != g.base:
        raise errors.BaseMismatch(f"{f.base} != {g.base}")
    if g.is_identity():
        return f
    if f.is_identity():
        return g
    f_ends = f.starts[1:] + (f.base.hi,)
    # Walk g's images left to right, cutting them at f's breakpoints.
    piece_g, piece_f, piece_len = [], [], []
    j = 0
    pos = g.base.lo
    for i in g.inverse_perm:
        i -= 1
        end = pos + g.lengths[i]
        while True:
            c = surd_cmp(f_ends[j], end)
            if c < 0:
                piece_g.append(i)
                piece_f.append(j)
                piece_len.append(f_ends[j] - pos)
                pos = f_ends[j]
                j += 1
            else:
                piece_g.append(i)
                piece_f.append(j)
                piece_len.append(end - pos)
                pos = end
                if c == 0:
                    j += 1
                break
    n = len(piece_g)
    domain_order = sorted(range(n), key=lambda s: (piece_g[s], s))
    image_order = sorted(range(n), key=lambda s: (f.perm[piece_f[s]], s))
    rank = [0] * n
    for r, s in enumerate(image_order, start=1):
        rank[s] = r
    return Iet._trusted(f.base, [piece_len[s] for s in domain_order], [rank[s] for s in domain_order])


def compose_all(base: Interval, maps: Sequence[Iet]) -> Iet:
    """``maps[0] * maps[1] * ... * maps[-1]`` (the last one acts first)."""
    out = Iet.identity(base)
    for m in reversed(maps):
        out = compose(m, out)
    return out


def invert(f: Iet) -> Iet:
    inv = f.inverse_perm
    return Iet._trusted(f.base, [f.lengths[i - 1] for i in inv], inv)


def equals(f: Iet, g: Iet) -> bool:
    return f == g


def restricted_rotation(base: Interval, spec: RotationSpec) -> Iet:
    s, a, b = spec.start, spec.a, spec.b
    end = s + a + b
    if not base.contains_interval(s, end):
        raise errors.SupportOutsideBase(f"rotation support [{s}, {end}) is not inside {base}")
    lengths, perm = [], []
    if s != base.lo:
        lengths.append(s - base.lo)
        perm.append(1)
    r = len(perm)
    lengths += [a, b]
    perm += [r + 2, r + 1]
    if end != base.hi:
        lengths.append(base.hi - end)
        perm.append(r + 3)
    return Iet._trusted(base, lengths, perm)


def interval_swap(base: Interval, spec: SwapSpec) -> Iet:
    a = spec.a
    u, v = (spec.x, spec.y) if spec.x <= spec.y else (spec.y, spec.x)
    if not (base.lo <= u and v + a <= base.hi):
        raise errors.SupportOutsideBase(f"swap blocks of {spec} are not inside {base}")
    if u + a > v:
        raise errors.OverlappingBlocks(f"swap blocks [{u}, {u + a}) and [{v}, {v + a}) overlap")
    pieces = [u - base.lo, a, v - (u + a), a, base.hi - (v + a)]
    ranks = [1, 4, 3, 2, 5]
    lengths, perm = [], []
    for lam, r in zip(pieces, ranks):
        if lam:
            lengths.append(lam)
            perm.append(r)
    # ranks of kept pieces, renumbered
    order = sorted(range(len(perm)), key=perm.__getitem__)
    rank = [0] * len(perm)
    for r, i in enumerate(order, start=1):
        rank[i] = r
    return Iet._trusted(base, lengths, rank)


def support(f: Iet) -> list[Interval]:
    """Maximal intervals of moved points, left to right."""
    out: list[list[SurdReal]] = []
    for x, lam, t in zip(f.starts, f.lengths, f.translations):
        if not t:
            continue
        if out and out[-1][1] == x:
            out[-1][1] = x + lam
        else:
            out.append([x, x + lam])
    return [Interval(lo, hi) for lo, hi in out]


def translation_on(f: Iet, lo: SurdReal, hi: SurdReal) -> SurdReal | None:
    """The translation of ``f`` on ``[lo, hi)`` if it is a single one, else None."""
    i = f.block_index(lo)
    if hi <= f.starts[i] + f.lengths[i]:
        return f.translations[i]
    return None


def as_swap(f: Iet) -> SwapSpec | None:
    """Recognise an interval swap map; returns its spec or None."""
    moved = [(x, lam, t) for x, lam, t in zip(f.starts, f.lengths, f.translations) if t]
    if len(moved) == 2:
        (x, a, t), (y, b, s) = moved
        if a == b and t == y - x and s == -t:
            return SwapSpec(a, x, y)
    return None


def as_rotation(f: Iet) -> RotationSpec | None:
    sup = support(f)
    if len(sup) != 1:
        return None
    x = sup[0].lo
    i = f.block_index(x)
    if i + 1 >= f.k:
        return None
    a, b = f.lengths[i], f.lengths[i + 1]
    if x + a + b != sup[0].hi:
        return None
    spec = RotationSpec(a, b, x)
    return spec if restricted_rotation(f.base, spec) == f else None


def order(f: Iet, max_iter: int = DEFAULT_MAX_ORDER) -> OrderResult:
    """Order of ``f``; nonzero SAF means infinite order without iterating."""
    from .saf import saf

    if not saf(f).is_zero():
        return OrderResult.infinite()
    p = f
    for n in range(1, max_iter + 1):
        if p.is_identity():
            return OrderResult.finite(n)
        p = compose(f, p)
    return OrderResult.bound_exceeded(max_iter)
