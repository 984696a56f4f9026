"""JSON formats for tilings and curve rules.

Rationals are strings ``"num/den"`` (``"num"`` when the denominator is 1),
scalars are ``{"a": ..., "b": ...}`` over the radicand declared once per
file, and points are two-element lists.  Writing is canonical, so saving a
loaded file reproduces it byte for byte.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .curves import Child, CurveRule
from .exact import (
    AffineSimilarity,
    Point,
    QuadScalar,
    RadicandMismatch,
    format_rational,
    parse_rational,
)
from .tiling import Tiling

MAP_KEYS = ("m00", "m01", "m10", "m11", "tx", "ty")


class FormatError(ValueError):
    pass


def scalar_to_json(x) -> dict:
    x = QuadScalar.coerce(x)
    return {"a": format_rational(x.a), "b": format_rational(x.b)}


def scalar_from_json(obj, d: Fraction) -> QuadScalar:
    if isinstance(obj, (str, int)):
        return QuadScalar(parse_rational(obj), 0, d)
    if not isinstance(obj, dict) or "a" not in obj:
        raise FormatError(f"bad scalar {obj!r}")
    if "d" in obj and parse_rational(obj["d"]) != d:
        raise RadicandMismatch(f"scalar radicand {obj['d']} differs from the file radicand {format_rational(d)}")
    return QuadScalar(parse_rational(obj["a"]), parse_rational(obj.get("b", "0")), d)


def point_to_json(p: Point) -> list:
    return [scalar_to_json(p.x), scalar_to_json(p.y)]


def point_from_json(obj, d: Fraction) -> Point:
    if not isinstance(obj, list) or len(obj) != 2:
        raise FormatError(f"bad point {obj!r}")
    return Point(scalar_from_json(obj[0], d), scalar_from_json(obj[1], d))


def _tri_from_json(obj, d):
    if not isinstance(obj, list) or len(obj) != 3:
        raise FormatError("a triangle needs exactly three points")
    return tuple(point_from_json(p, d) for p in obj)


def _radicand(obj) -> Fraction:
    try:
        d = parse_rational(obj.get("radicand", "0"))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad radicand: {exc}") from None
    if d < 0:
        raise FormatError("radicand must be nonnegative")
    return d


def tiling_to_json(t: Tiling) -> dict:
    t = t.canonical()
    return {
        "radicand": format_rational(t.radicand),
        "master": [point_to_json(p) for p in t.master],
        "tiles": [[point_to_json(p) for p in tile] for tile in t.tiles],
    }


def tiling_from_json(obj) -> Tiling:
    if not isinstance(obj, dict) or "master" not in obj:
        raise FormatError("tiling file needs 'master'")
    d = _radicand(obj)
    master = _tri_from_json(obj["master"], d)
    tiles = [_tri_from_json(t, d) for t in obj.get("tiles", [])]
    return Tiling(master, tiles)


def rule_to_json(rule: CurveRule) -> dict:
    out = {
        "radicand": format_rational(rule.radicand),
        "master": [point_to_json(p) for p in rule.master],
        "children": [
            {"map": {k: scalar_to_json(v) for k, v in zip(MAP_KEYS, c.map.entries())}, "reversed": bool(c.reversed)}
            for c in rule.children
        ],
    }
    if rule.intervals is not None:
        out["intervals"] = [scalar_to_json(x) for x in rule.intervals]
    return out


def rule_from_json(obj) -> CurveRule:
    if not isinstance(obj, dict) or "children" not in obj:
        raise FormatError("curve rule file needs 'children'")
    d = _radicand(obj)
    master = _tri_from_json(obj["master"], d)
    kids = []
    for c in obj["children"]:
        m = c["map"]
        kids.append(Child(AffineSimilarity(*(scalar_from_json(m[k], d) for k in MAP_KEYS)), bool(c.get("reversed", False))))
    ints = obj.get("intervals")
    if ints is not None:
        ints = [scalar_from_json(x, d) for x in ints]
    return CurveRule(master, kids, ints)


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, ensure_ascii=False) + "\n"


def save_tiling(t: Tiling, path) -> None:
    Path(path).write_text(dumps(tiling_to_json(t)), encoding="utf-8")


def load_tiling(path) -> Tiling:
    return tiling_from_json(read_json(path))


def save_rule(rule: CurveRule, path) -> None:
    Path(path).write_text(dumps(rule_to_json(rule)), encoding="utf-8")


def load_rule(path) -> CurveRule:
    return rule_from_json(read_json(path))


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def file_digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
