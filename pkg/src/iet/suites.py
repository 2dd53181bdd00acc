"""Randomized property suites behind ``iet verify``.

Each case draws fresh random maps from one seeded generator, so a seed fixes
the whole case sequence.  A failing check is shrunk greedily (maps replaced
by the identity or given fewer inversions) and reported as a reproducer
document.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import errors
from .core import (
    Iet,
    apply,
    compose,
    iet_new,
    interval_swap,
    invert,
    order,
    restricted_rotation,
)
from .documents import factor_to_doc, iet_from_doc, iet_to_doc
from .exact import ZERO
from .factor.elementary import (
    finite_order_to_swaps,
    rotation_step_reduce,
    rotations_factorization,
    swap_as_commutator,
)
from .factor.kernel import rotation_reduce_small, zero_saf_to_commutators, zero_saf_to_swaps
from .generators import (
    RADICAND_SETS,
    random_base,
    random_iet,
    random_nonzero_saf,
    random_point,
    random_refinement,
    random_rotation_spec,
    random_swap_spec,
    random_wedges,
    random_zero_saf,
)
from .saf import realize_saf, saf, saf_of_description, wedge

SUITES = ("group", "saf", "factor")


@dataclass
class Check:
    """A named property of some inputs; maps among them can be shrunk."""

    suite: str
    name: str
    prop: Callable[..., bool]
    inputs: list

    def holds(self, inputs: Sequence | None = None) -> bool:
        try:
            return bool(self.prop(*(self.inputs if inputs is None else inputs)))
        except Exception:  # any crash is a failure to report
            return False


@dataclass
class SuiteReport:
    suite: str
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)


# shrinking ------------------------------------------------------------------

def _simpler_maps(f: Iet):
    if not f.is_identity():
        yield Iet.identity(f.base)
    perm = list(f.perm)
    for i in range(len(perm) - 1):
        if perm[i] > perm[i + 1]:
            q = list(perm)
            q[i], q[i + 1] = q[i + 1], q[i]
            yield iet_new(f.base, f.lengths, q)


def shrink(check: Check) -> list:
    """Greedily simplify the map inputs of a failing check while it keeps failing."""
    inputs = list(check.inputs)
    progress = True
    while progress:
        progress = False
        for i, x in enumerate(inputs):
            if not isinstance(x, Iet):
                continue
            for y in _simpler_maps(x):
                trial = inputs[:i] + [y] + inputs[i + 1:]
                if not check.holds(trial):
                    inputs = trial
                    progress = True
                    break
            if progress:
                break
    return inputs


def _input_doc(x) -> Any:
    if isinstance(x, Iet):
        return iet_to_doc(x)
    try:
        return factor_to_doc(x)
    except TypeError:
        return str(x)


def reproducer(check: Check, seed: int, case: int) -> dict:
    return {
        "type": "reproducer",
        "suite": check.suite,
        "property": check.name,
        "seed": seed,
        "case": case,
        "inputs": [_input_doc(x) for x in shrink(check)],
    }


# suites ---------------------------------------------------------------------

def _is_identity(f: Iet) -> bool:
    return f.is_identity()


def _group_checks(rng: random.Random, radicands) -> list[Check]:
    base = random_base(rng, radicands)
    f, g, h = (random_iet(rng, base, 8, radicands) for _ in range(3))
    x = random_point(rng, base, radicands)
    ident = Iet.identity(base)

    def canonical(f):
        # no two neighbours could merge, and rebuilding changes nothing
        return all(q != p + 1 for p, q in zip(f.perm, f.perm[1:])) and iet_new(f.base, f.lengths, f.perm) == f

    return [
        Check("group", "associativity", lambda f, g, h: compose(compose(f, g), h) == compose(f, compose(g, h)), [f, g, h]),
        Check("group", "identity", lambda f: compose(f, ident) == f == compose(ident, f), [f]),
        Check("group", "inverse", lambda f: _is_identity(compose(f, invert(f))) and _is_identity(compose(invert(f), f)), [f]),
        Check("group", "apply of compose", lambda f, g: apply(compose(f, g), x) == apply(f, apply(g, x)), [f, g]),
        Check("group", "canonical form", canonical, [compose(f, g)]),
        Check("group", "document round trip", lambda f: iet_from_doc(iet_to_doc(f)) == f, [f]),
    ]


def _saf_checks(rng: random.Random, radicands) -> list[Check]:
    base = random_base(rng, radicands)
    f, g = (random_iet(rng, base, 8, radicands) for _ in range(2))
    lengths, translations = random_refinement(rng, f, rng.randint(1, 4), radicands)
    wedges = random_wedges(rng, rng.randint(1, 3), radicands)

    def realize(*_):
        total = wedge(ZERO, ZERO)
        for a, b in wedges:
            total = total + wedge(a, b)
        return saf(realize_saf(base, wedges)) == total

    def shortcut(f):
        return saf(f).is_zero() or order(f, 1).kind == "infinite"

    return [
        Check("saf", "homomorphism", lambda f, g: saf(compose(f, g)) == saf(f) + saf(g), [f, g]),
        Check("saf", "refinement independence", lambda f: saf_of_description(lengths, translations) == saf(f), [f]),
        Check("saf", "inverse negates", lambda f: saf(invert(f)) == -saf(f), [f]),
        Check("saf", "antisymmetric", lambda f: saf(f).is_antisymmetric(), [f]),
        Check("saf", "realize round trip", realize, []),
        Check("saf", "nonzero means infinite order", shortcut, [f]),
    ]


def _factor_checks(rng: random.Random, radicands, case: int) -> list[Check]:
    base = random_base(rng, radicands)
    kind = case % 5
    if kind == 0:
        f = random_iet(rng, base, 8, radicands)

        def rotations(f):
            cert = rotations_factorization(f)
            allowed = set(f.lengths)
            typed = f.k < 2 or all(r.a in allowed and r.b in allowed for r in cert.factors)
            return cert.verify() and cert.all_of("rotation") and typed

        return [Check("factor", "rotation factorization", rotations, [f])]
    if kind == 1:
        s = random_swap_spec(rng, base, radicands)

        def commutator(s):
            g3, g = swap_as_commutator(s, base)
            ident = Iet.identity(base)
            comm = compose(invert(g3), compose(invert(g), compose(g3, g)))
            return compose(g3, g3) == ident and compose(g, g) == ident and comm == interval_swap(base, s)

        def swap_order(s):
            f = interval_swap(base, s)
            return str(order(f)) == "finite 2" and finite_order_to_swaps(f).verify()

        return [Check("factor", "swap as commutator", commutator, [s]), Check("factor", "swap order", swap_order, [s])]
    if kind == 2:
        r = random_rotation_spec(rng, base, radicands)

        def reduce_small(r):
            head, tail = rotation_reduce_small(r, base, base.width / 5)
            return head.a + head.b < base.width / 5 and tail.verify() and tail.all_of("swap")

        def step(r):
            if r.a == r.b:
                return True
            spec = r if r.a > r.b else r.inverse()
            f = restricted_rotation(base, spec)
            g1, h, g2 = rotation_step_reduce(spec, base)
            hh = restricted_rotation(base, h)
            return compose(interval_swap(base, g1), f) == hh and compose(f, interval_swap(base, g2)) == hh

        return [Check("factor", "rotation reduction", reduce_small, [r]), Check("factor", "rotation step", step, [r])]
    if kind == 3:
        f = random_zero_saf(rng, None, 2, 3, radicands, max_pieces=12)

        def swaps(f):
            cert = zero_saf_to_swaps(f)
            ident = Iet.identity(f.base)
            involutions = all(compose(s.to_iet(f.base), s.to_iet(f.base)) == ident for s in cert.factors)
            return cert.verify() and cert.all_of("swap") and involutions

        def commutators(f):
            cert = zero_saf_to_commutators(f)
            return cert.verify() and cert.all_of("commutator")

        return [Check("factor", "zero SAF to swaps", swaps, [f]), Check("factor", "zero SAF to commutators", commutators, [f])]
    if radicands == (1,):
        radicands = (1, 2)
        base = random_base(rng, radicands)
    f = random_nonzero_saf(rng, base, radicands)
    k = rng.randint(2, 6)
    perm = list(range(1, k + 1))
    rng.shuffle(perm)
    finite = iet_new(base, [base.width / k] * k, perm)

    def rejected(f):
        try:
            zero_saf_to_swaps(f)
        except errors.NonzeroSaf:
            return True
        return False

    return [
        Check("factor", "nonzero SAF rejected", rejected, [f]),
        Check("factor", "finite order to swaps", lambda g: finite_order_to_swaps(g).verify(), [finite]),
    ]


def case_checks(suite: str, rng: random.Random, case: int) -> list[Check]:
    radicands = RADICAND_SETS[case % len(RADICAND_SETS)]
    if suite == "group":
        return _group_checks(rng, radicands)
    if suite == "saf":
        return _saf_checks(rng, radicands)
    if suite == "factor":
        return _factor_checks(rng, radicands, case)
    raise ValueError(f"unknown suite {suite!r}")


def run_suite(suite: str, seed: int, cases: int) -> SuiteReport:
    """Run ``cases`` cases of one suite; the generator is seeded per suite."""
    rng = random.Random(f"{seed}:{suite}")
    report = SuiteReport(suite)
    for case in range(cases):
        for check in case_checks(suite, rng, case):
            if check.holds():
                report.passed += 1
            else:
                report.failed += 1
                report.failures.append(reproducer(check, seed, case))
    return report


def run(suites: Sequence[str], seed: int, cases: int) -> list[SuiteReport]:
    return [run_suite(s, seed, cases) for s in suites]

