"""JSON documents for maps, certificates and conjugation chains.

Every number is surd text, so documents round-trip exactly.  Permutations
are read in one-line form or as ``{"cycles": [[...], ...]}`` and always
written in one-line form.
"""

from __future__ import annotations

import json
from typing import Any

from .core import Iet, Interval, RotationSpec, SwapSpec, as_swap, from_cycles, iet_new
from .errors import ParseError
from .exact import SurdReal, format_surd, parse_surd
from .factor.certificates import Commutator, Factorization
from .factor.simplicity import Conjugation, SimplicityWitness, SmallSwap


def _text(x: SurdReal) -> str:
    return format_surd(x)


def _surd_field(doc: dict, key: str) -> SurdReal:
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"field {key!r} must be surd text, got {value!r}")
    return parse_surd(str(value))


def _require_object(doc: Any, what: str) -> dict:
    if not isinstance(doc, dict):
        raise ParseError(f"{what} must be a JSON object")
    return doc


# maps ---------------------------------------------------------------------

def interval_to_doc(base: Interval) -> dict:
    return {"lo": _text(base.lo), "hi": _text(base.hi)}


def interval_from_doc(doc: Any) -> Interval:
    doc = _require_object(doc, "interval")
    return Interval(_surd_field(doc, "lo"), _surd_field(doc, "hi"))


def iet_to_doc(f: Iet) -> dict:
    return {
        "interval": interval_to_doc(f.base),
        "lengths": [_text(x) for x in f.lengths],
        "perm": list(f.perm),
    }


def _perm_from_doc(perm: Any, k: int) -> list[int]:
    if isinstance(perm, dict):
        cycles = perm.get("cycles")
        if not isinstance(cycles, list) or not all(isinstance(c, list) for c in cycles):
            raise ParseError("perm.cycles must be a list of integer lists")
        return list(from_cycles(k, [[_int(v) for v in c] for c in cycles]))
    if not isinstance(perm, list):
        raise ParseError("perm must be a list or an object with 'cycles'")
    return [_int(v) for v in perm]


def _int(v: Any) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"expected an integer, got {v!r}")
    return v


def iet_from_doc(doc: Any) -> Iet:
    doc = _require_object(doc, "IET document")
    for key in ("interval", "lengths", "perm"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    base = interval_from_doc(doc["interval"])
    lengths = doc["lengths"]
    if not isinstance(lengths, list):
        raise ParseError("lengths must be a list")
    lengths = [_surd_field({"length": x}, "length") for x in lengths]
    return iet_new(base, lengths, _perm_from_doc(doc["perm"], len(lengths)))


def swap_from_iet(f: Iet) -> SwapSpec:
    """The swap spec of a map that is an interval swap."""
    from .errors import PreconditionError

    spec = as_swap(f)
    if spec is None:
        raise PreconditionError("document is not an interval swap map")
    return spec


# factors and certificates ----------------------------------------------------

def factor_to_doc(factor) -> dict:
    if isinstance(factor, RotationSpec):
        return {"kind": "rotation", "a": _text(factor.a), "b": _text(factor.b), "start": _text(factor.start)}
    if isinstance(factor, SwapSpec):
        return {"kind": "swap", "a": _text(factor.a), "x": _text(factor.x), "y": _text(factor.y)}
    if isinstance(factor, Commutator):
        return {"kind": "commutator", "u": iet_to_doc(factor.u), "v": iet_to_doc(factor.v)}
    raise TypeError(f"not a factor: {factor!r}")


def factor_from_doc(doc: Any):
    doc = _require_object(doc, "factor")
    kind = doc.get("kind")
    if kind == "rotation":
        return RotationSpec(_surd_field(doc, "a"), _surd_field(doc, "b"), _surd_field(doc, "start"))
    if kind == "swap":
        return SwapSpec(_surd_field(doc, "a"), _surd_field(doc, "x"), _surd_field(doc, "y"))
    if kind == "commutator":
        if "u" not in doc or "v" not in doc:
            raise ParseError("commutator factor needs 'u' and 'v'")
        return Commutator(iet_from_doc(doc["u"]), iet_from_doc(doc["v"]))
    raise ParseError(f"unknown factor kind {kind!r}")


def certificate_to_doc(cert: Factorization) -> dict:
    """Certificate document; ``verified`` is recomputed here, never trusted."""
    return {
        "type": "certificate",
        "target": iet_to_doc(cert.target),
        "factors": [factor_to_doc(x) for x in cert.factors],
        "verified": cert.verify(),
    }


def certificate_from_doc(doc: Any) -> Factorization:
    doc = _require_object(doc, "certificate")
    if "target" not in doc or "factors" not in doc:
        raise ParseError("certificate needs 'target' and 'factors'")
    target = iet_from_doc(doc["target"])
    if not isinstance(doc["factors"], list):
        raise ParseError("factors must be a list")
    return Factorization(target.base, [factor_from_doc(x) for x in doc["factors"]], target)


# chains -----------------------------------------------------------------

def _checks_doc(checks) -> list[dict]:
    return [{"check": name, "ok": ok} for name, ok in checks]


def conjugation_to_doc(c: Conjugation) -> dict:
    checks = c.checks()
    return {
        "type": "conjugation",
        "interval": interval_to_doc(c.base),
        "source": factor_to_doc(c.source),
        "target": factor_to_doc(c.target),
        "middle": factor_to_doc(c.middle),
        "g1": iet_to_doc(c.g1),
        "g2": iet_to_doc(c.g2),
        "g": iet_to_doc(c.g),
        "g1_commutators": certificate_to_doc(c.g1_commutators),
        "g2_commutators": certificate_to_doc(c.g2_commutators),
        "checks": _checks_doc(checks),
        "verified": all(ok for _, ok in checks),
    }


def conjugation_from_doc(doc: Any) -> Conjugation:
    doc = _require_object(doc, "conjugation")
    try:
        return Conjugation(
            interval_from_doc(doc["interval"]),
            factor_from_doc(doc["source"]),
            factor_from_doc(doc["target"]),
            factor_from_doc(doc["middle"]),
            iet_from_doc(doc["g1"]),
            iet_from_doc(doc["g2"]),
            certificate_from_doc(doc["g1_commutators"]),
            certificate_from_doc(doc["g2_commutators"]),
        )
    except KeyError as exc:
        raise ParseError(f"conjugation document is missing {exc}") from None


def small_swap_to_doc(s: SmallSwap) -> dict:
    checks = s.checks()
    return {
        "type": "small-swap",
        "f": iet_to_doc(s.f),
        "g1": factor_to_doc(s.g1),
        "g2": factor_to_doc(s.g2),
        "swap": factor_to_doc(s.swap),
        "g1_commutator": certificate_to_doc(s.g1_commutator),
        "g2_commutator": certificate_to_doc(s.g2_commutator),
        "checks": _checks_doc(checks),
        "verified": all(ok for _, ok in checks),
    }


def small_swap_from_doc(doc: Any) -> SmallSwap:
    doc = _require_object(doc, "small swap")
    try:
        f = iet_from_doc(doc["f"])
        return SmallSwap(
            f.base,
            f,
            factor_from_doc(doc["g1"]),
            factor_from_doc(doc["g2"]),
            factor_from_doc(doc["swap"]),
            certificate_from_doc(doc["g1_commutator"]),
            certificate_from_doc(doc["g2_commutator"]),
        )
    except KeyError as exc:
        raise ParseError(f"small-swap document is missing {exc}") from None


def simplicity_to_doc(w: SimplicityWitness) -> dict:
    checks = w.checks()
    return {
        "type": "simplicity",
        "f": iet_to_doc(w.f),
        "eps": _text(w.eps),
        "step": small_swap_to_doc(w.step),
        "sample": conjugation_to_doc(w.sample),
        "refinement": certificate_to_doc(w.refinement),
        "piece_step": small_swap_to_doc(w.piece_step),
        "piece_conjugations": [conjugation_to_doc(c) for c in w.piece_conjugations],
        "verified": all(ok for _, ok in checks),
    }


def simplicity_from_doc(doc: Any) -> SimplicityWitness:
    doc = _require_object(doc, "simplicity chain")
    try:
        return SimplicityWitness(
            iet_from_doc(doc["f"]),
            _surd_field(doc, "eps"),
            small_swap_from_doc(doc["step"]),
            conjugation_from_doc(doc["sample"]),
            certificate_from_doc(doc["refinement"]),
            small_swap_from_doc(doc["piece_step"]),
            tuple(conjugation_from_doc(c) for c in doc["piece_conjugations"]),
        )
    except KeyError as exc:
        raise ParseError(f"simplicity document is missing {exc}") from None


_LOADERS = {
    "certificate": certificate_from_doc,
    "conjugation": conjugation_from_doc,
    "small-swap": small_swap_from_doc,
    "simplicity": simplicity_from_doc,
}


def load_checkable(doc: Any):
    """Rebuild a certificate or chain document as an object with ``verify()``."""
    doc = _require_object(doc, "document")
    kind = doc.get("type", "certificate")
    if kind not in _LOADERS:
        raise ParseError(f"unknown document type {kind!r}")
    return _LOADERS[kind](doc)


# text I/O -----------------------------------------------------------------

def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
