"""Rescaling a foliage tree along a strictly increasing alpha.

Between a node v of height h and its sons a graft with k(v) = alpha(h) -
alpha(h - 1) levels is planted. Its inner nodes at depth r < k are indexed
by r-tuples t; an inner node unions the host sons whose k-tuple code starts
with t. A host node of height h lands at hybrid height alpha(h - 1) + 1.
"""

import logging
import threading
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from ..core.paths import NodePath
from ..core.tree import FoliageTree, ShootDecision, SonFamily
from ..errors import OutsideAlgebra
from ..hybrid.lazy import (
    GraftFamily,
    HybridFoliageTree,
    Label,
    LazyGraft,
    fhybr,
    graft_label,
    host_label,
)
from ..points import Point
from ..symsets import ClopenSet, Decision, IndexSet, SonUnion, normalize, tuple_code, tuple_decode
from ..symsets.forms import agreeing_reps, has_combs, leaf_status
from .alpha import Alpha

logger = logging.getLogger(__name__)


class GraftLevelFamily(SonFamily):
    """Sons of the inner graft node `pos`: classes pos + <l> of host son codes."""

    def __init__(self, graft: "RescaleGraft", pos: NodePath):
        host_sons = graft.host_sons
        super().__init__(("graft", graft.host.key, graft.root, graft.k, pos), host_sons.space)
        self.graft = graft
        self.host_sons = host_sons
        self.pos = pos
        self.last = len(pos) == graft.k - 1

    def _class(self, prefix: NodePath) -> IndexSet:
        return IndexSet.of_class(prefix, self.graft.k)

    def leaf_at(self, i: int) -> ClopenSet:
        entries = (*self.pos, i)
        if self.last:
            return self.host_sons.leaf_at(tuple_code(entries))
        return SonUnion(self.host_sons, self._class(entries))

    def residual(self, n: int) -> ClopenSet:
        indices = self._class(self.pos)
        for i in range(n):
            indices = indices.difference(self._class((*self.pos, i)))
        return SonUnion(self.host_sons, indices)

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        code = self.host_sons.index_of(point, search_cap)
        if code is None:
            return None
        entries = tuple_decode(code, self.graft.k)
        if entries[: len(self.pos)] != self.pos:
            return None
        return entries[len(self.pos)]

    def horizon(self, forms: Sequence[Any]) -> tuple[int, tuple[int, ...]] | None:
        found = self.host_sons.horizon(forms)
        if found is None or not agreeing_reps(self.host_sons, found[1], forms):
            return None
        # codes are >= each of their entries, so son K only unions host sons >= K
        return found[0], (found[0],)

    def stable_start(self, forms: Sequence[Any]) -> int | None:
        found = self.host_sons.horizon(forms)
        return None if found is None else found[0]

    def eventually_within(self, target: ClopenSet, search_cap: int = 256) -> ShootDecision:
        try:
            form = normalize(target)
            found = None if has_combs(form) else self.host_sons.horizon([form])
            if found is None:
                return super().eventually_within(target, search_cap)
            start, reps = found
            statuses = {leaf_status(self.host_sons.leaf_at(r), form) for r in reps}
        except OutsideAlgebra as err:
            return ShootDecision(Decision.UNKNOWN, reason=str(err))
        if len(statuses) != 1:
            return ShootDecision(Decision.UNKNOWN, reason="host son tails disagree")
        if statuses != {True}:
            return ShootDecision(Decision.NO, reason=f"host sons from {start} leave the target")
        depth = len(self.pos)
        bad = [-1]
        for code in range(start):
            entries = tuple_decode(code, self.graft.k)
            if entries[:depth] != self.pos:
                continue
            if leaf_status(self.host_sons.leaf_at(code), form) is not True:
                bad.append(entries[depth])
        return ShootDecision(Decision.YES, max(bad) + 1)


class RescaleGraft(LazyGraft):
    """Graft with k inner levels between host node `root` and its sons."""

    def __init__(self, host: FoliageTree, root: NodePath, k: int):
        super().__init__(host, root)
        if k < 1:
            raise ValueError(f"Graft needs at least one level, got {k}")
        self.k = k
        self.host_sons = host.sons_of(root)
        self._families: dict[NodePath, GraftLevelFamily] = {}
        self._lock = threading.Lock()

    def family(self, pos: NodePath) -> SonFamily:
        if len(pos) >= self.k:
            raise IndexError(f"Graft position {pos} beyond {self.k} levels")
        with self._lock:
            family = self._families.get(pos)
            if family is None:
                family = self._families.setdefault(pos, GraftLevelFamily(self, pos))
        return family

    def child(self, pos: NodePath, i: int) -> Label:
        entries = (*pos, i)
        if len(entries) < self.k:
            return graft_label(self.root, entries)
        return host_label((*self.root, tuple_code(entries)))

    def max_node_above(self, target: NodePath) -> NodePath | None:
        if len(target) <= len(self.root) or target[: len(self.root)] != self.root:
            return None
        return target[: len(self.root) + 1]

    def route(self, max_node: NodePath) -> NodePath:
        return tuple_decode(max_node[-1], self.k)


class RescaleGrafts(GraftFamily):
    """One rescale graft per host node whose level gap k(v) exceeds 1."""

    def __init__(self, host: FoliageTree, alpha: Alpha):
        super().__init__(host)
        self.alpha = alpha
        self.description = f"rescale({host.description}, {alpha.description})"
        self._grafts: dict[NodePath, RescaleGraft | None] = {}
        self._lock = threading.Lock()

    def k(self, v: NodePath) -> int:
        return self.alpha.gap(len(v))

    def graft_at(self, root: NodePath) -> LazyGraft | None:
        with self._lock:
            if root in self._grafts:
                return self._grafts[root]
        k = self.k(root)
        graft = RescaleGraft(self.host, root, k) if k > 1 else None
        if graft is not None:
            logger.debug("Planted a %d-level graft at %s", k, root)
        with self._lock:
            return self._grafts.setdefault(root, graft)

    def hybrid_height(self, v: NodePath) -> int:
        return self.alpha(len(v) - 1) + 1

    def separation_bound(self, depth: int) -> Fraction | None:
        return self.host.separation_bound(self.alpha.floor_height(depth))


def rescale_tree(
    tree: FoliageTree, alpha: Alpha, *, depth: int = 1, probe: int = 2
) -> HybridFoliageTree:
    """Hybrid of `tree` with interpolating grafts so heights h move to alpha(h - 1) + 1."""
    alpha.check_increasing()
    return fhybr(tree, RescaleGrafts(tree, alpha), depth=depth, probe=probe)
