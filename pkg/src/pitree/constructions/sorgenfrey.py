"""A Baire foliage tree on the Sorgenfrey line.

The root's sons are the unit intervals [z, z+1), with z running through
0, 1, -1, 2, -2, ...; below the root an interval [a, b) is cut into
[x_n, x_{n+1}) with x_n = b - (b - a) / 2^n, so sons accumulate at b.
"""

import math
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from ..core.paths import NodePath
from ..core.tree import FoliageTree, SonFamily
from ..points import Point, SorgPoint
from ..symsets import SORG_LINE, ClopenSet, SorgIv, union_of
from ..symsets.forms import sorg_breakpoints


def zigzag(n: int) -> int:
    """n-th integer in the order 0, 1, -1, 2, -2, ..."""
    return (n + 1) // 2 if n % 2 else -(n // 2)


def zigzag_index(z: int) -> int:
    return 2 * z - 1 if z > 0 else -2 * z


class UnitIntervalSons(SonFamily):
    """Sons of the whole line: [zigzag(n), zigzag(n) + 1)."""

    def __init__(self) -> None:
        super().__init__(("sorgenfrey", ()), "sorg")

    def leaf_at(self, i: int) -> ClopenSet:
        z = zigzag(i)
        return SorgIv(Fraction(z), Fraction(z + 1))

    def residual(self, n: int) -> ClopenSet:
        if n == 0:
            return SORG_LINE
        lo = -((n - 1) // 2)
        hi = n // 2 + 1
        return union_of([SorgIv(None, Fraction(lo)), SorgIv(Fraction(hi), None)])

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        if not isinstance(point, SorgPoint):
            return None
        return zigzag_index(math.floor(point.value))

    def horizon(self, forms: Sequence[Any]) -> tuple[int, tuple[int, ...]]:
        cuts = sorg_breakpoints(forms)
        if not cuts:
            return 0, (0,)
        low = min(math.floor(b) for b in cuts)
        high = max(math.floor(b) + 1 for b in cuts)
        start = 1 + max(zigzag_index(z) for z in range(low, high))
        # past `start`, positive sons lie right of every cut and the others left of them
        return start, (start, start + 1)


class DyadicSons(SonFamily):
    """Sons of [lo, hi): [x_n, x_{n+1}) with x_n = hi - (hi - lo) / 2^n."""

    def __init__(self, path: NodePath, lo: Fraction, hi: Fraction):
        super().__init__(("sorgenfrey", path), "sorg")
        self.lo = lo
        self.hi = hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def cut(self, n: int) -> Fraction:
        return self.hi - self.width / 2**n

    def leaf_at(self, i: int) -> ClopenSet:
        return SorgIv(self.cut(i), self.cut(i + 1))

    def residual(self, n: int) -> ClopenSet:
        return SorgIv(self.cut(n), self.hi)

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        if not isinstance(point, SorgPoint) or not self.lo <= point.value < self.hi:
            return None
        ratio = self.width / (self.hi - point.value)
        return math.floor(ratio).bit_length() - 1

    def horizon(self, forms: Sequence[Any]) -> tuple[int, tuple[int, ...]]:
        start = 0
        for b in sorg_breakpoints(forms):
            if self.lo <= b < self.hi:
                # least n with x_n > b
                start = max(start, math.floor(self.width / (self.hi - b)).bit_length())
        return start, (start,)


class SorgenfreyTree(FoliageTree):
    space = "sorg"
    description = "sorgenfrey"

    @property
    def root_leaf(self) -> ClopenSet:
        return SORG_LINE

    def interval(self, path: NodePath) -> tuple[Fraction, Fraction] | None:
        """Bounds of the leaf at a non-root path."""
        if not path:
            return None
        lo = Fraction(zigzag(path[0]))
        hi = lo + 1
        for i in path[1:]:
            width = hi - lo
            lo, hi = hi - width / 2**i, hi - width / 2 ** (i + 1)
        return lo, hi

    def _make_family(self, path: NodePath) -> SonFamily:
        bounds = self.interval(path)
        if bounds is None:
            return UnitIntervalSons()
        return DyadicSons(path, *bounds)

    def separation(self, path: NodePath) -> Fraction | None:
        bounds = self.interval(path)
        return None if bounds is None else bounds[1] - bounds[0]

    def separation_bound(self, depth: int) -> Fraction | None:
        return None if depth == 0 else Fraction(2) ** (1 - depth)


def sorgenfrey_tree() -> SorgenfreyTree:
    return SorgenfreyTree()
