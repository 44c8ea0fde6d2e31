"""JSON interchange for truncated cubical sets and their morphisms.

Object files look like::

    {"trunc": 1,
     "levels": {"0": ["a", "b"], "1": ["p"]},
     "action": {"0->1:[c0]": {"p": "a"}, ...}}

Identity actions may be omitted on input and are never written.  Morphism
files hold ``"source"``, ``"target"`` (object documents) and
``"components"`` (``{"0": {"x": "y"}, ...}``).
"""

from __future__ import annotations

import json
from pathlib import Path

from ..cube import all_morphisms, format_mor, parse_mor
from ..errors import CubepropError, ParseError
from .core import TCSet, TCSetMor, morphism, validate


def tcset_to_dict(X: TCSet) -> dict:
    action = {}
    for s in all_morphisms(X.trunc):
        if s.is_identity:
            continue
        action[format_mor(s)] = {x: X.action[s][x] for x in X.levels[s.cod]}
    return {
        "trunc": X.trunc,
        "levels": {str(n): list(lv) for n, lv in enumerate(X.levels)},
        "action": action,
    }


def tcset_from_dict(doc, where: str = "$") -> TCSet:
    if not isinstance(doc, dict):
        raise ParseError("expected an object", where)
    for key in ("trunc", "levels"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", where)
    trunc = doc["trunc"]
    if not isinstance(trunc, int) or trunc < 0:
        raise ParseError("trunc must be a non-negative integer", f"{where}.trunc")
    raw_levels = doc["levels"]
    if not isinstance(raw_levels, dict):
        raise ParseError("levels must be an object", f"{where}.levels")
    levels = []
    for n in range(trunc + 1):
        lv = raw_levels.get(str(n))
        if not isinstance(lv, list) or not all(isinstance(x, str) for x in lv):
            raise ParseError("expected a list of strings",
                             f"{where}.levels.{n}")
        levels.append(lv)
    if set(raw_levels) - {str(n) for n in range(trunc + 1)}:
        raise ParseError("levels beyond the truncation", f"{where}.levels")
    action = {}
    for key, row in doc.get("action", {}).items():
        s = parse_mor(key)
        if not isinstance(row, dict):
            raise ParseError("expected an object", f"{where}.action.{key}")
        action[s] = row
    try:
        return validate(trunc, levels, action)
    except CubepropError as exc:
        raise ParseError(str(exc), f"{where}.action") from None


def mor_to_dict(f: TCSetMor) -> dict:
    return {
        "source": tcset_to_dict(f.source),
        "target": tcset_to_dict(f.target),
        "components": {str(n): dict(c) for n, c in enumerate(f.components)},
    }


def mor_from_dict(doc, where: str = "$") -> TCSetMor:
    if not isinstance(doc, dict):
        raise ParseError("expected an object", where)
    for key in ("source", "target", "components"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}", where)
    X = tcset_from_dict(doc["source"], f"{where}.source")
    Y = tcset_from_dict(doc["target"], f"{where}.target")
    comps = [doc["components"].get(str(n)) for n in range(X.trunc + 1)]
    try:
        return morphism(X, Y, comps)
    except (CubepropError, TypeError, AttributeError) as exc:
        raise ParseError(str(exc), f"{where}.components") from None


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def loads(text: str, where: str = "$") -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{where}:{exc.lineno}:{exc.colno}") from None


def load_file(path) -> TCSet | TCSetMor:
    """Read an object or morphism file, telling them apart by their keys."""
    path = Path(path)
    doc = loads(path.read_text(), str(path))
    if isinstance(doc, dict) and "components" in doc:
        return mor_from_dict(doc, str(path))
    return tcset_from_dict(doc, str(path))


def dump_file(obj, path) -> None:
    doc = mor_to_dict(obj) if isinstance(obj, TCSetMor) else tcset_to_dict(obj)
    Path(path).write_text(dumps(doc))
