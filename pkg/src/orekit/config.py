"""Session configuration: one JSON document describes a full context.

Schema (unknown keys are rejected at every level):

    {
      "ring":   {"kind": "zmod", "modulus": 6}
                {"kind": "gf", "p": 2, "k": 2, "modulus": [1, 1, 1]}
                {"kind": "truncpoly", "p": 2, "order": 2}
                {"kind": "matrix", "base": {...}, "size": 2},
      "n":      2,
      "sigma":  {"kind": "diagonal", "endos": ["frobenius:1", "identity"]}
                {"kind": "conjugated", "u": [["1","1"],["0","1"]], "endos": [...]}
                {"kind": "block", "alpha": {...}, "beta": {...},
                 "gamma": {"kind": "zero"} | {"kind": "inner", "matrix": [["x"]]}
                          | {"kind": "table", "entries": {...}}}
                {"kind": "table", "entries": {"<literal>": [[...]]}},
      "delta":  {"kind": "zero"}
                {"kind": "inner", "point": ["g", "0"]}
                {"kind": "coordinate", "maps": ["zero", "derivative",
                                                {"kind": "table", "entries": {...}}]}
                {"kind": "transformed", "v": [[...]], "base": {...}},
      "guards": {"max_ring_card": 65536, "max_terms": 1000000,
                 "max_search": 1000000},        # optional
      "output": "json"                          # optional, "json" or "text"
    }

GF moduli are coefficient lists, constant term first; omitting the key
selects the least irreducible monic polynomial, deterministically.
"""

import json
from dataclasses import dataclass

from .errors import SchemaError
from .guards import DEFAULT_GUARDS, Guards
from .rings import ring_from_obj
from .twist import OreContext, derivation_from_obj, twist_from_obj

_TOP_KEYS = {"ring", "n", "sigma", "delta", "guards", "output"}
_GUARD_KEYS = {"max_ring_card", "max_terms", "max_search"}


@dataclass
class SessionConfig:
    ctx: OreContext
    output: str
    source: dict


def config_from_obj(obj):
    if not isinstance(obj, dict):
        raise SchemaError("configuration must be an object")
    extra = set(obj) - _TOP_KEYS
    if extra:
        raise SchemaError(f"unknown keys {sorted(extra)}")
    for key in ("ring", "n", "sigma", "delta"):
        if key not in obj:
            raise SchemaError(f"missing required key {key!r}")
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("n must be a positive integer", "$.n")
    guards = DEFAULT_GUARDS
    if "guards" in obj:
        raw = obj["guards"]
        if not isinstance(raw, dict):
            raise SchemaError("guards block must be an object", "$.guards")
        extra = set(raw) - _GUARD_KEYS
        if extra:
            raise SchemaError(f"unknown keys {sorted(extra)}", "$.guards")
        merged = {"max_ring_card": DEFAULT_GUARDS.max_ring_card,
                  "max_terms": DEFAULT_GUARDS.max_terms,
                  "max_search": DEFAULT_GUARDS.max_search}
        for key, val in raw.items():
            if not isinstance(val, int) or val < 1:
                raise SchemaError("guard limits must be positive integers",
                                  f"$.guards.{key}")
            merged[key] = val
        guards = Guards(**merged)
    output = obj.get("output", "json")
    if output not in ("json", "text"):
        raise SchemaError("output must be \"json\" or \"text\"", "$.output")
    ring = ring_from_obj(obj["ring"], "$.ring")
    twist = twist_from_obj(ring, obj["sigma"], "$.sigma")
    if twist.size != n:
        raise SchemaError(f"sigma describes {twist.size} variables, n is {n}",
                          "$.sigma")
    derivation = derivation_from_obj(ring, n, obj["delta"], "$.delta", twist)
    ctx = OreContext(ring, n, twist, derivation, guards)
    return SessionConfig(ctx=ctx, output=output, source=obj)


def load_config(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            from .errors import ParseError
            raise ParseError(f"configuration is not valid JSON: {exc}") from None
    return config_from_obj(obj)
