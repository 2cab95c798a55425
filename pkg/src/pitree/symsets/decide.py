"""Exact decisions on symbolic sets: membership, emptiness, inclusion, disjointness."""

import logging
from collections.abc import Sequence

from ..errors import OutsideAlgebra, OverlapError, SpaceMismatch
from ..points import BairePoint, Point, ProductPoint, SorgPoint, space_of
from .forms import NoForm, combine, normalize
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
    union_of,
)

logger = logging.getLogger(__name__)


class Decision:
    """Three-valued answers of the decision procedures."""

    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    ALL = (YES, NO, UNKNOWN)

    @staticmethod
    def of(value: bool) -> str:
        return Decision.YES if value else Decision.NO


def _baire(p: Point) -> BairePoint:
    if not isinstance(p, BairePoint):
        raise SpaceMismatch(f"{space_of(p)} point tested against a Baire set")
    return p


def member(p: Point, s: ClopenSet) -> bool:
    """Exact membership, evaluated on the set expression."""
    if isinstance(s, Empty):
        return False
    if isinstance(s, Cyl):
        return _baire(p).restrict(len(s.path)) == s.path
    if isinstance(s, TailCyl):
        q = _baire(p)
        return q.restrict(len(s.path)) == s.path and q.at(len(s.path)) >= s.m
    if isinstance(s, SorgIv):
        if not isinstance(p, SorgPoint):
            raise SpaceMismatch(f"{space_of(p)} point tested against a Sorgenfrey interval")
        return (s.lo is None or s.lo <= p.value) and (s.hi is None or p.value < s.hi)
    if isinstance(s, Points):
        return p in s.points
    if isinstance(s, Minus):
        return p not in s.points and member(p, s.base)
    if isinstance(s, FinUnion):
        return any(member(p, m) for m in s.members)
    if isinstance(s, Box):
        if not isinstance(p, ProductPoint):
            raise SpaceMismatch(f"{space_of(p)} point tested against a product box")
        return all(member(p.coordinate(c), part) for c, part in s.support)
    if isinstance(s, Diff):
        return member(p, s.base) and not member(p, s.removed)
    if isinstance(s, SonUnion):
        if not member(p, s.family.residual(0)):
            return False
        index = s.family.index_of(p)
        return index is not None and s.indices.contains(index)
    raise TypeError(f"Not a clopen set: {s!r}")


def _decide_empty(s: ClopenSet) -> str:
    try:
        return Decision.of(isinstance(normalize(s), NoForm))
    except OutsideAlgebra as err:
        logger.debug("Undecided emptiness: %s", err)
        return Decision.UNKNOWN


def is_empty(s: ClopenSet) -> str:
    return _decide_empty(s)


def is_subset(a: ClopenSet, b: ClopenSet) -> str:
    """Decide a <= b; UNKNOWN only outside the closed algebra."""
    try:
        return Decision.of(isinstance(combine(normalize(a), normalize(b), "sub"), NoForm))
    except OutsideAlgebra as err:
        logger.debug("Undecided inclusion: %s", err)
        return Decision.UNKNOWN


def is_disjoint(a: ClopenSet, b: ClopenSet) -> str:
    try:
        return Decision.of(isinstance(combine(normalize(a), normalize(b), "and"), NoForm))
    except OutsideAlgebra as err:
        logger.debug("Undecided disjointness: %s", err)
        return Decision.UNKNOWN


def equal(a: ClopenSet, b: ClopenSet) -> str:
    left = is_subset(a, b)
    if left == Decision.NO:
        return left
    right = is_subset(b, a)
    if right == Decision.NO:
        return right
    return Decision.YES if left == right == Decision.YES else Decision.UNKNOWN


def make_union(members: Sequence[ClopenSet]) -> ClopenSet:
    """Disjoint union, checking pairwise disjointness up front."""
    for i, a in enumerate(members):
        for b in members[i + 1 :]:
            if is_disjoint(a, b) == Decision.NO:
                raise OverlapError(f"Union members overlap: {a} and {b}")
    return union_of(members)
