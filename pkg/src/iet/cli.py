"""``iet``: exact interval exchange maps from the command line.

Exit codes: 0 success, 1 verification failure, 2 unreadable input,
3 violated precondition, 4 nonzero SAF invariant where zero is required.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import errors
from .core import DEFAULT_MAX_ORDER, apply, compose, invert, order
from .documents import (
    certificate_to_doc,
    conjugation_to_doc,
    dumps,
    iet_from_doc,
    iet_to_doc,
    load_checkable,
    loads,
    simplicity_to_doc,
    swap_from_iet,
)
from .exact import format_surd, parse_surd
from .factor.elementary import rotations_factorization
from .factor.kernel import balanced_rotations_factorization, zero_saf_to_commutators, zero_saf_to_swaps
from .factor.simplicity import conjugate_same_type_small, refine_swap, simplicity_witness
from .saf import saf

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_PRECONDITION, EXIT_NONZERO_SAF = 0, 1, 2, 3, 4

FACTOR_MODES = {
    "rotations": rotations_factorization,
    "balanced": balanced_rotations_factorization,
    "swaps": zero_saf_to_swaps,
    "commutators": zero_saf_to_commutators,
}


class VerificationFailed(Exception):
    pass


def max_order_default() -> int:
    value = os.environ.get("IET_MAX_ORDER")
    if value is None:
        return DEFAULT_MAX_ORDER
    try:
        n = int(value)
    except ValueError:
        raise errors.ParseError(f"IET_MAX_ORDER must be an integer, got {value!r}") from None
    if n < 1:
        raise errors.ParseError("IET_MAX_ORDER must be positive")
    return n


def _read(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.ParseError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise errors.ParseError(f"{path} is not UTF-8") from None
    return loads(text)


def _read_iet(path: str):
    return iet_from_doc(_read(path))


def _emit(doc, out: str | None) -> None:
    text = dumps(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_checked(doc: dict, out: str | None) -> None:
    # never write a certificate whose recomposition failed
    if not doc["verified"]:
        raise VerificationFailed("certificate did not recompose to its target")
    _emit(doc, out)


# commands -------------------------------------------------------------------

def cmd_compose(args) -> int:
    maps = [_read_iet(p) for p in [args.first, *args.rest]]
    out = maps[-1]
    for f in reversed(maps[:-1]):
        out = compose(f, out)
    _emit(iet_to_doc(out), args.out)
    return EXIT_OK


def cmd_invert(args) -> int:
    _emit(iet_to_doc(invert(_read_iet(args.input))), args.out)
    return EXIT_OK


def cmd_canon(args) -> int:
    _emit(iet_to_doc(_read_iet(args.input)), args.out)
    return EXIT_OK


def cmd_apply(args) -> int:
    f = _read_iet(args.input)
    print(format_surd(apply(f, parse_surd(args.x))))
    return EXIT_OK


def cmd_order(args) -> int:
    bound = args.max if args.max is not None else max_order_default()
    if bound < 1:
        raise errors.PreconditionError("--max must be positive")
    print(order(_read_iet(args.input), bound))
    return EXIT_OK


def cmd_saf(args) -> int:
    s = saf(_read_iet(args.input))
    _emit({"entries": [[d, e, str(q)] for (d, e), q in s.items()], "zero": s.is_zero()}, None)
    return EXIT_OK


def cmd_factor(args) -> int:
    cert = FACTOR_MODES[args.mode](_read_iet(args.input))
    _emit_checked(certificate_to_doc(cert), args.out)
    return EXIT_OK


def cmd_refine(args) -> int:
    f = _read_iet(args.input)
    cert = refine_swap(swap_from_iet(f), parse_surd(args.eps), f.base)
    _emit_checked(certificate_to_doc(cert), args.out)
    return EXIT_OK


def cmd_conjugate(args) -> int:
    f1, f2 = _read_iet(args.first), _read_iet(args.second)
    if f1.base != f2.base:
        raise errors.BaseMismatch(f"{f1.base} != {f2.base}")
    c = conjugate_same_type_small(swap_from_iet(f1), swap_from_iet(f2), f1.base)
    _emit_checked(conjugation_to_doc(c), args.out)
    return EXIT_OK


def cmd_simplicity(args) -> int:
    w = simplicity_witness(_read_iet(args.input), parse_surd(args.eps))
    _emit_checked(simplicity_to_doc(w), args.out)
    return EXIT_OK


def _verify_document(path: str) -> int:
    obj = load_checkable(_read(path))
    ok = obj.verify()
    print(f"{path}: {'verified' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    if args.certificate:
        status = EXIT_OK
        for path in args.certificate:
            status = max(status, _verify_document(path))
        return status
    from .suites import SUITES, run

    suites = SUITES if args.suite == "all" else (args.suite,)
    failed = 0
    first = None
    for report in run(suites, args.seed, args.cases):
        print(f"suite {report.suite}: {report.passed} passed, {report.failed} failed")
        failed += report.failed
        if first is None and report.failures:
            first = report.failures[0]
    if failed:
        print("first failure, minimized:")
        sys.stdout.write(dumps(first))
        return EXIT_VERIFY
    print(f"all {args.cases} cases passed (seed {args.seed})")
    return EXIT_OK


# parser ---------------------------------------------------------------------

def _nonnegative(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="compose maps; the last file acts first")
    p.add_argument("first", metavar="FILE")
    p.add_argument("rest", nargs="+", metavar="FILE")
    p.add_argument("--out")
    p.set_defaults(run=cmd_compose)

    for name, fn, text in (("invert", cmd_invert, "inverse map"), ("canon", cmd_canon, "canonical form")):
        p = sub.add_parser(name, help=text)
        p.add_argument("input")
        p.add_argument("--out")
        p.set_defaults(run=fn)

    p = sub.add_parser("apply", help="evaluate a map at a point")
    p.add_argument("input")
    p.add_argument("x", help="point as surd text, e.g. '1/2 + sqrt(2)'")
    p.set_defaults(run=cmd_apply)

    p = sub.add_parser("order", help="order of a map (finite N, infinite, bound-exceeded N)")
    p.add_argument("input")
    p.add_argument("--max", type=int, help="iteration bound (default IET_MAX_ORDER or 4096)")
    p.set_defaults(run=cmd_order)

    p = sub.add_parser("saf", help="SAF invariant as sorted sparse entries")
    p.add_argument("input")
    p.set_defaults(run=cmd_saf)

    p = sub.add_parser("factor", help="certified factorization")
    p.add_argument("input")
    p.add_argument("--mode", choices=sorted(FACTOR_MODES), default="rotations")
    p.add_argument("--out")
    p.set_defaults(run=cmd_factor)

    p = sub.add_parser("refine", help="split a swap into swaps of type below eps")
    p.add_argument("input")
    p.add_argument("--eps", required=True)
    p.add_argument("--out")
    p.set_defaults(run=cmd_refine)

    p = sub.add_parser("conjugate", help="conjugate two small swaps of one type")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out")
    p.set_defaults(run=cmd_conjugate)

    p = sub.add_parser("simplicity", help="normal-closure chain for a zero-SAF map")
    p.add_argument("input")
    p.add_argument("--eps", required=True)
    p.add_argument("--out")
    p.set_defaults(run=cmd_simplicity)

    p = sub.add_parser("verify", help="randomized property suites, or re-check documents")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=_nonnegative, default=100)
    p.add_argument("--suite", choices=("all", "group", "saf", "factor"), default="all")
    p.add_argument("--certificate", action="append", metavar="FILE", help="re-verify a certificate or chain document")
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except errors.NonzeroSaf as exc:
        print(f"error: nonzero SAF invariant: {exc.tensor}", file=sys.stderr)
        return EXIT_NONZERO_SAF
    except errors.EpsTooLarge as exc:
        print(f"error: eps must be below {format_surd(exc.eps0)}", file=sys.stderr)
        return EXIT_PRECONDITION
    except errors.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except errors.PreconditionError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except VerificationFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
