"""Finite unions of half-open rational intervals [lo, hi) of the Sorgenfrey line.

`None` stands for -inf as a lower end and +inf as an upper end. Normalized
lists are sorted, pairwise disjoint and never adjacent.
"""

from collections.abc import Callable
from fractions import Fraction

Bound = Fraction | None
Interval = tuple[Bound, Bound]
Intervals = tuple[Interval, ...]

WHOLE: Intervals = ((None, None),)
NOTHING: Intervals = ()


def _below_hi(x: Fraction, hi: Bound) -> bool:
    return hi is None or x < hi


def _above_lo(x: Fraction, lo: Bound) -> bool:
    return lo is None or lo <= x


def contains(ivs: Intervals, x: Fraction) -> bool:
    return any(_above_lo(x, lo) and _below_hi(x, hi) for lo, hi in ivs)


def interval(lo: Bound, hi: Bound) -> Intervals:
    if lo is not None and hi is not None and lo >= hi:
        return NOTHING
    return ((lo, hi),)


def breakpoints(ivs: Intervals) -> list[Fraction]:
    points: set[Fraction] = set()
    for lo, hi in ivs:
        if lo is not None:
            points.add(lo)
        if hi is not None:
            points.add(hi)
    return sorted(points)


class _Cursor:
    """Membership of increasing query points in one sorted list."""

    def __init__(self, ivs: Intervals):
        self.ivs = ivs
        self.at = 0

    def contains(self, x: Fraction) -> bool:
        ivs = self.ivs
        while self.at < len(ivs) and not _below_hi(x, ivs[self.at][1]):
            self.at += 1
        return self.at < len(ivs) and _above_lo(x, ivs[self.at][0])


def combine_by(operands: list[Intervals], fn: Callable[[list[bool]], bool]) -> Intervals:
    """Combine interval lists pointwise by a boolean function, sweeping breakpoints."""
    points: set[Fraction] = set()
    for ivs in operands:
        points.update(breakpoints(ivs))
    cuts = sorted(points)
    if not cuts:
        return WHOLE if fn([contains(ivs, Fraction(0)) for ivs in operands]) else NOTHING
    # Segment i is [cuts[i-1], cuts[i]); segment 0 is (-inf, cuts[0]), the last one is open above.
    segments: list[tuple[Bound, Bound, Fraction]] = [(None, cuts[0], cuts[0] - 1)]
    for i, cut in enumerate(cuts):
        upper = cuts[i + 1] if i + 1 < len(cuts) else None
        segments.append((cut, upper, cut))
    cursors = [_Cursor(ivs) for ivs in operands]
    out: list[Interval] = []
    for lo, hi, rep in segments:
        if not fn([c.contains(rep) for c in cursors]):
            continue
        if out and out[-1][1] == lo:
            out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return tuple(out)


def combine(a: Intervals, b: Intervals, op: str) -> Intervals:
    """Boolean combination ("and", "or", "sub") of two normalized lists."""
    if op == "and":
        return combine_by([a, b], lambda v: v[0] and v[1])
    if op == "or":
        return combine_by([a, b], lambda v: v[0] or v[1])
    if op == "sub":
        return combine_by([a, b], lambda v: v[0] and not v[1])
    raise ValueError(f"Unknown operation: {op}")


def normalize(ivs: Intervals) -> Intervals:
    """Sorted, merged form of any list of intervals."""
    out: Intervals = NOTHING
    for lo, hi in ivs:
        out = combine(out, interval(lo, hi), "or")
    return out


def width(ivs: Intervals) -> Fraction | None:
    """Total length, None when unbounded."""
    total = Fraction(0)
    for lo, hi in ivs:
        if lo is None or hi is None:
            return None
        total += hi - lo
    return total
