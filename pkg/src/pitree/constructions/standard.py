"""The standard foliage tree of Baire space: the leaf at x is the cylinder of x."""

from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from ..core.paths import NodePath
from ..core.tree import FoliageTree, SonFamily
from ..points import BairePoint, Point
from ..symsets import BAIRE, ClopenSet, Cyl, tail_cyl
from ..symsets.forms import trie_horizon


class CylinderSons(SonFamily):
    """Sons path + <i> of a Baire node; residual(n) is the tail cylinder from n."""

    def __init__(self, path: NodePath):
        super().__init__(("standard", path), "baire")
        self.path = path

    def leaf_at(self, i: int) -> ClopenSet:
        return Cyl((*self.path, i))

    def residual(self, n: int) -> ClopenSet:
        return tail_cyl(self.path, n)

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        if not isinstance(point, BairePoint):
            return None
        if point.restrict(len(self.path)) != self.path:
            return None
        return point.at(len(self.path))

    def horizon(self, forms: Sequence[Any]) -> tuple[int, tuple[int, ...]]:
        start = trie_horizon(forms, self.path)
        return start, (start,)


class StandardTree(FoliageTree):
    space = "baire"
    description = "standard"

    @property
    def root_leaf(self) -> ClopenSet:
        return BAIRE

    def _make_family(self, path: NodePath) -> SonFamily:
        return CylinderSons(path)

    def separation(self, path: NodePath) -> Fraction | None:
        return Fraction(1, 2 ** len(path))

    def separation_bound(self, depth: int) -> Fraction | None:
        return Fraction(1, 2**depth)


def standard_tree() -> StandardTree:
    return StandardTree()
