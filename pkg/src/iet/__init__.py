"""Exact interval exchange transformations over surd lengths, their SAF
invariant, and certified factorizations into swaps and commutators."""

from . import errors
from .core import (
    DEFAULT_MAX_ORDER,
    Iet,
    Interval,
    OrderResult,
    RotationSpec,
    SwapSpec,
    apply,
    as_rotation,
    as_swap,
    compose,
    compose_all,
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
from .exact import (
    ONE,
    ZERO,
    Rational,
    SurdReal,
    format_surd,
    parse_surd,
    surd,
    surd_add,
    surd_cmp,
    surd_scale,
    surd_sign,
)
from .saf import (
    EuclidTrace,
    TensorQQ,
    euclid_pairs,
    realize_saf,
    saf,
    shrink_wedge,
    tensor_add,
    tensor_is_zero,
    tensor_neg,
    wedge,
)

__version__ = "0.1.0"
