"""Ring corpora: JSON files listing rings plus optional expectation pins.

Schema::

    {"entries": [
        {"name": "T2(F_2)",
         "ring": "T2(F_2)",                     # constructor expression, or
         "ring": {"moduli": [...], "mul": [...], "unit": [...]},
         "expect": {"qmax_order": 16, "gamma": 0}}   # optional
    ]}

Pins are compared against computed values after the fact and never feed the
computation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

from .constructors import parse_ring
from .errors import ParseError, RingValidationError, ValidationError
from .rings import FiniteRing, validate_ring

EXPECTATION_KEYS = {
    "order": int,
    "ideals": int,
    "dense": int,
    "essential": int,
    "qmax_order": int,
    "qtot_order": int,
    "gamma": int,
    "condition_C": bool,
    "condition_C_prime": bool,
    "semihereditary": bool,
    "regular": bool,
    "semisimple": bool,
    "kasch": bool,
}


@dataclass
class CorpusEntry:
    name: str
    definition: Union[str, dict]
    ring: FiniteRing
    expect: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "ring": self.definition}
        if self.expect:
            out["expect"] = dict(self.expect)
        return out


BUILTIN = [
    ("F_2", "F_2", {"qmax_order": 2, "gamma": 0, "regular": True}),
    ("F_3", "F_3", {"qmax_order": 3, "gamma": 0, "regular": True}),
    ("Z/4", "Z/4", {"ideals": 3, "dense": 1, "essential": 2, "qmax_order": 4, "gamma": 0,
                    "semihereditary": False}),
    ("Z/6", "Z/6", {"qmax_order": 6, "regular": True}),
    ("F_2xF_2", "F_2 x F_2", {"ideals": 4, "qmax_order": 4, "qtot_order": 4}),
    ("F_2xF_3", "F_2 x F_3", {"qmax_order": 6}),
    ("M2(F_2)", "M2(F_2)", {"qmax_order": 16, "semisimple": True, "semihereditary": True}),
    ("T2(F_2)", "T2(F_2)", {"order": 8, "qmax_order": 16, "qtot_order": 16, "gamma": 0,
                            "condition_C": True, "semihereditary": True, "kasch": True}),
    ("T2(F_3)", "T2(F_3)", {"order": 27, "qmax_order": 81, "qtot_order": 81}),
    ("F_2[x]/(x^2)", "F_2[x]/(x^2)", {"qmax_order": 4, "qtot_order": 4, "gamma": 0}),
    ("F_2[C_2]", "F_2[C_2]", {"order": 4}),
    ("A3 with ab=0", "Path(F_2; 3; a:1->2, b:2->3; a*b)", {"order": 32, "qmax_order": 32,
                                                          "kasch": False}),
    ("T2(Z/4)", "T2(Z/4)", {"order": 64, "qmax_order": 256, "qtot_order": 256,
                            "condition_C": False, "semihereditary": False}),
    ("triangle with ac=0", "Path(F_2; 3; a:1->2, b:1->3, c:2->3; a*c)",
     {"order": 64, "qmax_order": 512, "qtot_order": 64, "gamma": 1, "condition_C": False}),
]


def builtin_corpus() -> list[CorpusEntry]:
    return [CorpusEntry(n, d, parse_ring(d), dict(e)) for n, d, e in BUILTIN]


def builtin_json() -> dict:
    return {"entries": [e.to_json() for e in builtin_corpus()]}


def _entry(i: int, raw: Any) -> CorpusEntry:
    where = f"entries[{i}]"
    if not isinstance(raw, dict):
        raise ParseError("entry must be an object", where)
    unknown = set(raw) - {"name", "ring", "expect"}
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", where)
    name = raw.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError("missing name", where)
    if "ring" not in raw:
        raise ParseError("missing ring", where)
    d = raw["ring"]
    expect = raw.get("expect", {})
    if not isinstance(expect, dict):
        raise ParseError("expect must be an object", f"{where}.expect")
    for k, v in expect.items():
        typ = EXPECTATION_KEYS.get(k)
        if typ is None:
            raise ParseError(f"unknown expectation key {k!r}", f"{where}.expect")
        if type(v) is not typ:
            raise ParseError(f"{k} must be {typ.__name__}", f"{where}.expect.{k}")
    if isinstance(d, str):
        try:
            ring = parse_ring(d)
        except ParseError as e:
            raise ParseError(str(e), f"{where}.ring") from None
        except (RingValidationError, ValueError) as e:
            raise ValidationError(name, e) from None
    elif isinstance(d, dict):
        try:
            ring = validate_ring({"name": name, **d})
        except (RingValidationError, ValueError, TypeError, KeyError) as e:
            raise ValidationError(name, e) from None
    else:
        raise ParseError("ring must be an expression or an object", f"{where}.ring")
    return CorpusEntry(name, d, ring, expect)


def parse_corpus(text: str, source: str = "<string>") -> list[CorpusEntry]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"{source}:{e.lineno}:{e.colno}") from None
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise ParseError('top level must be {"entries": [...]}', source)
    entries = [_entry(i, raw) for i, raw in enumerate(data["entries"])]
    names = [e.name for e in entries]
    dup = {n for n in names if names.count(n) > 1}
    if dup:
        raise ParseError(f"duplicate entry names {sorted(dup)}", source)
    return entries


def load_corpus(path: Union[str, Path, None] = None) -> list[CorpusEntry]:
    """Entries of a corpus file; the built-in corpus when ``path`` is None."""
    if path is None:
        return builtin_corpus()
    p = Path(path)
    return parse_corpus(p.read_text(), str(p))
