"""Certificates: ordered factor lists that recompose to a target map.

Factors are listed the way products are written, ``f = f_1 f_2 ... f_n``,
so the *last* factor acts first and the product is
``compose(f_1, compose(f_2, ... f_n))``.  :meth:`Factorization.product` is the
single place this convention is applied.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Union

from ..core import Iet, Interval, RotationSpec, SwapSpec, compose, invert


@dataclass(frozen=True)
class Commutator:
    """The commutator ``u^-1 v^-1 u v``."""

    u: Iet
    v: Iet

    def to_iet(self, base: Interval) -> Iet:
        u, v = self.u, self.v
        return compose(invert(u), compose(invert(v), compose(u, v)))


Factor = Union[RotationSpec, SwapSpec, Commutator]


def factor_kind(factor: Factor) -> str:
    if isinstance(factor, RotationSpec):
        return "rotation"
    if isinstance(factor, SwapSpec):
        return "swap"
    if isinstance(factor, Commutator):
        return "commutator"
    raise TypeError(f"not a factor: {factor!r}")


def factor_iet(factor: Factor, base: Interval) -> Iet:
    return factor.to_iet(base)


def product(base: Interval, factors) -> Iet:
    out = Iet.identity(base)
    for fac in reversed(factors):
        out = compose(factor_iet(fac, base), out)
    return out


@dataclass(frozen=True)
class Factorization:
    base: Interval
    factors: tuple
    target: Iet
    notes: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def product(self) -> Iet:
        return product(self.base, self.factors)

    def verify(self) -> bool:
        return self.product() == self.target

    def kinds(self) -> Counter:
        return Counter(factor_kind(f) for f in self.factors)

    def all_of(self, kind: str) -> bool:
        return all(factor_kind(f) == kind for f in self.factors)
