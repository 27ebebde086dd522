"""JSON state-spec documents: parse, validate, build, and re-serialize.

Grammar (one document per file)::

    {"type": "twin_fock", "n": 10}
    {"type": "noon", "n": 6}
    {"type": "product", "n": 5, "alpha": [re, im], "beta": [re, im]}
    {"type": "separable_mixture", "n": 4,
     "components": [{"weight": 0.5, "alpha": [re, im], "beta": [re, im]}, ...]}
    {"type": "sector_mixture", "sectors": [{"prob": 0.5, "state": {...fixed-N spec...}}, ...]}

Sector-mixture entries with the same particle number are merged into a
single sector (their convex combination).
    {"type": "werner", "p": 0.5}
"""

import json

from .distinguishable import werner_state
from .errors import InvalidArgument, InvariantViolation
from .fock import Orbital
from . import states

FIXED_N_TYPES = ("twin_fock", "noon", "product", "separable_mixture")
ALL_TYPES = FIXED_N_TYPES + ("sector_mixture", "werner")


class SpecParseError(ValueError):
    """Malformed document: bad JSON or a schema mismatch."""

    def __init__(self, message, line=None, column=None, path=None):
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(f"at {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)
        self.line = line
        self.column = column
        self.path = path


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def _require(obj, key, path):
    if not isinstance(obj, dict):
        raise SpecParseError("expected an object", path=path)
    if key not in obj:
        raise SpecParseError(f"missing field {key!r}", path=path)
    return obj[key]


def _check_keys(obj, allowed, path):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise SpecParseError(f"unknown field(s) {extra}", path=path)


def _int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecParseError(f"expected an integer, got {value!r}", path=path)
    return value


def _real(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SpecParseError(f"expected a number, got {value!r}", path=path)
    return float(value)


def _complex(value, path):
    if not isinstance(value, list) or len(value) != 2:
        raise SpecParseError(f"expected [re, im], got {value!r}", path=path)
    return [_real(value[0], path + "[0]"), _real(value[1], path + "[1]")]


def normalize(doc, path="$", fixed_n_only=False):
    """Schema-check ``doc`` and return its canonical form (plain JSON types)."""
    kind = _require(doc, "type", path)
    allowed = FIXED_N_TYPES if fixed_n_only else ALL_TYPES
    if kind not in allowed:
        raise SpecParseError(f"unknown or disallowed state type {kind!r}; expected one of {list(allowed)}", path=path + ".type")
    out = {"type": kind}
    if kind in ("twin_fock", "noon"):
        _check_keys(doc, ("type", "n"), path)
        out["n"] = _int(_require(doc, "n", path), path + ".n")
    elif kind == "product":
        _check_keys(doc, ("type", "n", "alpha", "beta"), path)
        out["n"] = _int(_require(doc, "n", path), path + ".n")
        out["alpha"] = _complex(_require(doc, "alpha", path), path + ".alpha")
        out["beta"] = _complex(_require(doc, "beta", path), path + ".beta")
    elif kind == "separable_mixture":
        _check_keys(doc, ("type", "n", "components"), path)
        out["n"] = _int(_require(doc, "n", path), path + ".n")
        comps = _require(doc, "components", path)
        if not isinstance(comps, list):
            raise SpecParseError("expected a list", path=path + ".components")
        out["components"] = []
        for i, c in enumerate(comps):
            cp = f"{path}.components[{i}]"
            _check_keys(c if isinstance(c, dict) else {}, ("weight", "alpha", "beta"), cp)
            out["components"].append(
                {
                    "weight": _real(_require(c, "weight", cp), cp + ".weight"),
                    "alpha": _complex(_require(c, "alpha", cp), cp + ".alpha"),
                    "beta": _complex(_require(c, "beta", cp), cp + ".beta"),
                }
            )
    elif kind == "sector_mixture":
        _check_keys(doc, ("type", "sectors"), path)
        sectors = _require(doc, "sectors", path)
        if not isinstance(sectors, list):
            raise SpecParseError("expected a list", path=path + ".sectors")
        out["sectors"] = []
        for i, s in enumerate(sectors):
            sp = f"{path}.sectors[{i}]"
            _check_keys(s if isinstance(s, dict) else {}, ("prob", "state"), sp)
            out["sectors"].append(
                {
                    "prob": _real(_require(s, "prob", sp), sp + ".prob"),
                    "state": normalize(_require(s, "state", sp), sp + ".state", fixed_n_only=True),
                }
            )
    else:  # werner
        _check_keys(doc, ("type", "p"), path)
        out["p"] = _real(_require(doc, "p", path), path + ".p")
    return out


def _orbital(alpha, beta):
    return Orbital(complex(*alpha), complex(*beta))


def _build(doc):
    kind = doc["type"]
    if kind == "twin_fock":
        return states.twin_fock(doc["n"])
    if kind == "noon":
        return states.noon(doc["n"])
    if kind == "product":
        return states.product_state(_orbital(doc["alpha"], doc["beta"]), doc["n"])
    if kind == "separable_mixture":
        comps = tuple((c["weight"], _orbital(c["alpha"], c["beta"])) for c in doc["components"])
        return states.separable_mixture(states.SeparableSpec(doc["n"], comps))
    if kind == "sector_mixture":
        # same-N entries are a convex combination inside one sector
        return states.sector_mixture([(s["prob"], _build(s["state"])) for s in doc["sectors"]], merge_duplicates=True)
    return werner_state(doc["p"])


def build(doc):
    """Construct the state of a normalized document.

    Constructor precondition failures become :class:`InvariantViolation`;
    every built density is also checked against the density invariants.
    """
    try:
        state = _build(doc)
    except InvalidArgument as exc:
        raise InvariantViolation(f"{doc['type']} precondition", str(exc)) from None
    if hasattr(state, "sectors"):
        for _, rho in state.sectors:
            rho.check()
    else:
        state.check()
    return state


def parse(text):
    """``(normalized_doc, state)`` from document text."""
    doc = normalize(loads(text))
    return doc, build(doc)


def dumps(doc):
    return json.dumps(doc, sort_keys=True)
