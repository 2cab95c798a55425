"""Seeded fault injection: a tree with one corrupted son leaf on a probed node."""

import logging
import random
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from ..core.paths import NodePath, format_path
from ..core.tree import FoliageTree, SonFamily
from ..errors import ConfigError
from ..points import Point
from ..symsets import BAIRE, SORG_LINE, Box, ClopenSet, Diff, Points, union_of
from .samples import product_of

logger = logging.getLogger(__name__)


class FaultKind:
    """Ways a son leaf is corrupted."""

    OVERLAP = "overlap"  # son i also covers son i + 1
    ESCAPE = "escape"  # son i also covers everything outside its parent
    RETAIN = "retain"  # son i gets a removed point back

    # All valid fault kinds
    ALL = (OVERLAP, ESCAPE, RETAIN)


def whole_space(tree: FoliageTree) -> ClopenSet:
    if tree.space == "baire":
        return BAIRE
    if tree.space == "sorg":
        return SORG_LINE
    product = product_of(tree)
    return Box((), product.lam if product is not None else None)


class FaultySons(SonFamily):
    """`base` with `extra` added to the leaf of son `index`; residuals are left intact."""

    def __init__(self, base: SonFamily, index: int, extra: ClopenSet, kind: str):
        super().__init__(("fault", kind, base.key, index), base.space)
        self.base = base
        self.index = index
        self.extra = extra
        self.n0 = base.n0
        self.size = base.size

    def leaf_at(self, i: int) -> ClopenSet:
        leaf = self.base.leaf_at(i)
        return union_of([leaf, self.extra]) if i == self.index else leaf

    def residual(self, n: int) -> ClopenSet:
        return self.base.residual(n)

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        return self.base.index_of(point, search_cap)

    def horizon(self, forms: Sequence[Any]) -> tuple[int, tuple[int, ...]] | None:
        return self.base.horizon(forms)


class FaultyTree(FoliageTree):
    """`base` with one seeded fault at a node of height < `depth` with son entries < `probe`."""

    raw = True

    def __init__(
        self, base: FoliageTree, kind: str, seed: int = 0, *, depth: int = 3, probe: int = 2
    ):
        super().__init__()
        if kind not in FaultKind.ALL:
            raise ConfigError(f"Unknown fault {kind!r}, expected one of {FaultKind.ALL}")
        self.loss: tuple[Point, ...] = tuple(getattr(base, "loss", ()))
        if kind == FaultKind.RETAIN and not self.loss:
            raise ConfigError(f"{base.description} removes no points to retain")
        self.base = base
        self.kind = kind
        self.seed = seed
        self.space = base.space
        self.description = f"faulty({base.description}, {kind}, {seed})"

        rng = random.Random(seed)
        # an escaping son needs a parent smaller than the whole space
        low = 1 if kind == FaultKind.ESCAPE else 0
        height = rng.randint(low, max(low, depth - 1))
        self.node: NodePath = tuple(rng.randrange(probe) for _ in range(height))
        self.index = rng.randrange(probe)
        self._point = self.loss[rng.randrange(len(self.loss))] if self.loss else None
        logger.debug("Injected %s at son %d of %s", kind, self.index, format_path(self.node))

    def _extra(self, family: SonFamily) -> ClopenSet:
        if self.kind == FaultKind.OVERLAP:
            return family.leaf_at(self.index + 1)
        if self.kind == FaultKind.ESCAPE:
            return Diff(whole_space(self.base), self.base.leaf(self.node))
        assert self._point is not None
        return Points((self._point,))

    @property
    def root_leaf(self) -> ClopenSet:
        return self.base.root_leaf

    def _make_family(self, path: NodePath) -> SonFamily:
        family = self.base.sons_of(path)
        if path != self.node:
            return family
        return FaultySons(family, self.index, self._extra(family), self.kind)

    def separation(self, path: NodePath) -> Fraction | None:
        return self.base.separation(path)

    def separation_bound(self, depth: int) -> Fraction | None:
        return self.base.separation_bound(depth)


def inject_fault(
    tree: FoliageTree, kind: str, seed: int = 0, *, depth: int = 3, probe: int = 2
) -> FaultyTree:
    return FaultyTree(tree, kind, seed, depth=depth, probe=probe)
