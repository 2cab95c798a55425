"""Canonical JSON form of points and symbolic sets (variant tag + fields)."""

import json
from fractions import Fraction
from typing import Any

from ..errors import SerializationError
from ..points import BairePoint, Point, ProductPoint, SorgPoint, format_rational, parse_rational
from .sets import (
    Box,
    ClopenSet,
    Cyl,
    Diff,
    Empty,
    FinUnion,
    Minus,
    Points,
    SonUnion,
    SorgIv,
    TailCyl,
)


def point_to_json(p: Point) -> dict[str, Any]:
    if isinstance(p, BairePoint):
        return {"baire": {"prefix": list(p.prefix), "tail": p.tail}}
    if isinstance(p, SorgPoint):
        return {"sorg": format_rational(p.value)}
    explicit = [point_to_json(q) for q in p.explicit]
    return {"prod": {"explicit": explicit, "tail": point_to_json(p.tail)}}


def point_from_json(data: Any) -> Point:
    if not isinstance(data, dict) or len(data) != 1:
        raise SerializationError(f"Point must be a single-key object: {data!r}")
    tag, body = next(iter(data.items()))
    try:
        if tag == "baire":
            return BairePoint(tuple(body.get("prefix", [])), int(body.get("tail", 0)))
        if tag == "sorg":
            return SorgPoint(parse_rational(body))
        if tag == "prod":
            if isinstance(body, list):
                if not body:
                    raise SerializationError("Product point needs at least one coordinate")
                coords = [point_from_json(q) for q in body]
                return ProductPoint(tuple(coords), coords[-1])
            return ProductPoint(
                tuple(point_from_json(q) for q in body["explicit"]), point_from_json(body["tail"])
            )
    except (KeyError, TypeError, ValueError) as err:
        raise SerializationError(f"Invalid {tag} point: {body!r}") from err
    raise SerializationError(f"Unknown point tag: {tag}")


def _bound_to_json(q: Fraction | None, upper: bool) -> str:
    if q is None:
        return "inf" if upper else "-inf"
    return format_rational(q)


def _bound_from_json(text: str | int) -> Fraction | None:
    if text in ("inf", "-inf"):
        return None
    return parse_rational(text)


def to_json(s: ClopenSet) -> dict[str, Any]:
    if isinstance(s, Empty):
        return {"empty": {}}
    if isinstance(s, Cyl):
        return {"cyl": list(s.path)}
    if isinstance(s, TailCyl):
        return {"tailcyl": {"path": list(s.path), "m": s.m}}
    if isinstance(s, SorgIv):
        return {"sorg": [_bound_to_json(s.lo, False), _bound_to_json(s.hi, True)]}
    if isinstance(s, Points):
        return {"points": [point_to_json(p) for p in s.points]}
    if isinstance(s, Minus):
        return {"minus": {"set": to_json(s.base), "points": [point_to_json(p) for p in s.points]}}
    if isinstance(s, FinUnion):
        return {"union": [to_json(m) for m in s.members]}
    if isinstance(s, Box):
        return {"box": {"support": [[c, to_json(m)] for c, m in s.support], "arity": s.arity}}
    if isinstance(s, Diff):
        return {"diff": [to_json(s.base), to_json(s.removed)]}
    if isinstance(s, SonUnion):
        return {"sonunion": {"family": str(s.family.key), "arity": s.indices.arity}}
    raise SerializationError(f"Not a clopen set: {s!r}")


def from_json(data: Any) -> ClopenSet:
    if not isinstance(data, dict) or len(data) != 1:
        raise SerializationError(f"Set must be a single-key object: {data!r}")
    tag, body = next(iter(data.items()))
    try:
        if tag == "empty":
            return Empty()
        if tag == "cyl":
            return Cyl(tuple(int(x) for x in body))
        if tag == "tailcyl":
            return TailCyl(tuple(int(x) for x in body["path"]), int(body["m"]))
        if tag == "sorg":
            lo, hi = body
            return SorgIv(_bound_from_json(lo), _bound_from_json(hi))
        if tag == "points":
            return Points(tuple(point_from_json(p) for p in body))
        if tag == "minus":
            return Minus(from_json(body["set"]), tuple(point_from_json(p) for p in body["points"]))
        if tag == "union":
            return FinUnion(tuple(from_json(m) for m in body))
        if tag == "box":
            support = tuple((int(c), from_json(m)) for c, m in body["support"])
            return Box(support, body.get("arity"))
        if tag == "diff":
            base, removed = body
            return Diff(from_json(base), from_json(removed))
        if tag == "sonunion":
            raise SerializationError("Son unions refer to a live tree and cannot be reloaded")
    except (KeyError, TypeError, ValueError) as err:
        raise SerializationError(f"Invalid {tag} set: {body!r}") from err
    raise SerializationError(f"Unknown set tag: {tag}")


def dumps(obj: Any) -> str:
    """Canonical compact JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
