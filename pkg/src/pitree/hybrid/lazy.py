"""Foliage hybrids of lazy trees with lazily indexed graft families.

Hybrid nodes carry stable labels: ("host", path) for nodes kept from the host
and ("graft", root, pos) for the inner nodes of the graft planted at host
node `root`. Every leaf loses the cut points of all grafts.
"""

import logging
from abc import ABC, abstractmethod
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from ..core.paths import NodePath, format_path
from ..core.tree import (
    CanonicalTree,
    FoliageTree,
    LabeledTree,
    ShootDecision,
    SonFamily,
    check_omega_branching,
)
from ..points import Point
from ..symsets import ClopenSet, Minus, Points, member, normalize, union_of

logger = logging.getLogger(__name__)

Label = tuple[Any, ...]


def host_label(path: NodePath) -> Label:
    return ("host", path)


def graft_label(root: NodePath, pos: NodePath) -> Label:
    return ("graft", root, pos)


class LazyGraft(ABC):
    """A graft planted at host node `root`, addressed by local positions.

    Position () is the root itself; every other position is an inner node.
    Sons of the last inner level are host nodes (the graft's max nodes).
    """

    cut: tuple[Point, ...] = ()

    def __init__(self, host: FoliageTree, root: NodePath):
        self.host = host
        self.root = root

    @abstractmethod
    def family(self, pos: NodePath) -> SonFamily: ...

    @abstractmethod
    def child(self, pos: NodePath, i: int) -> Label:
        """Label of son i of position `pos`."""

    @abstractmethod
    def max_node_above(self, target: NodePath) -> NodePath | None:
        """Max node at or above a host node strictly below the root, None if none is."""

    @abstractmethod
    def route(self, max_node: NodePath) -> NodePath:
        """Son indices leading from the graft root to `max_node`."""

    def leaf(self, pos: NodePath) -> ClopenSet:
        if not pos:
            return self.host.leaf(self.root)
        return self.family(pos[:-1]).leaf_at(pos[-1])

    def separation(self, pos: NodePath) -> Fraction | None:
        return self.host.separation(self.root)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_path(self.root)})"


class GraftFamily(ABC):
    """A consistent family of grafts for `host`, looked up by root."""

    description: str = ""

    def __init__(self, host: FoliageTree):
        self.host = host

    @abstractmethod
    def graft_at(self, root: NodePath) -> LazyGraft | None: ...

    @property
    def loss(self) -> tuple[Point, ...]:
        return ()

    def separation_bound(self, depth: int) -> Fraction | None:
        return self.host.separation_bound(depth)


class LossFamily(SonFamily):
    """A son family with finitely many points removed from every leaf."""

    def __init__(self, base: SonFamily, loss: Sequence[Point]):
        super().__init__(("loss", base.key, tuple(loss)), base.space)
        self.base = base
        self.loss = tuple(loss)
        self.n0 = base.n0
        self.size = base.size

    def leaf_at(self, i: int) -> ClopenSet:
        return Minus(self.base.leaf_at(i), self.loss)

    def residual(self, n: int) -> ClopenSet:
        return Minus(self.base.residual(n), self.loss)

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        if point in self.loss:
            return None
        return self.base.index_of(point, search_cap)

    def horizon(self, forms: Sequence[Any]) -> tuple[int, tuple[int, ...]] | None:
        return self.base.horizon([*forms, normalize(Points(self.loss))])

    def eventually_within(self, target: ClopenSet, search_cap: int = 256) -> ShootDecision:
        # leaf - A <= U  iff  leaf <= U + A
        outside = tuple(p for p in self.loss if not member(p, target))
        widened = union_of([target, Points(outside)]) if outside else target
        return self.base.eventually_within(widened, search_cap)


class HybridTree(LabeledTree[Label]):
    """The foliage hybrid of `host` and a lazily indexed graft family."""

    def __init__(self, host: FoliageTree, grafts: GraftFamily):
        self.host = host
        self.grafts = grafts
        self.space = host.space
        self.description = grafts.description or f"hybrid({host.description})"
        self.loss = grafts.loss

    @property
    def root_label(self) -> Label:
        return host_label(())

    def _graft(self, label: Label) -> LazyGraft:
        graft = self.grafts.graft_at(label[1])
        if graft is None:
            raise KeyError(f"No graft at {format_path(label[1])}")
        return graft

    def _lose(self, s: ClopenSet) -> ClopenSet:
        return Minus(s, self.loss) if self.loss else s

    def leaf_of(self, label: Label) -> ClopenSet:
        if label[0] == "host":
            return self._lose(self.host.leaf(label[1]))
        return self._lose(self._graft(label).leaf(label[2]))

    def family_of(self, label: Label) -> SonFamily:
        if label[0] == "host":
            graft = self.grafts.graft_at(label[1])
            family = graft.family(()) if graft else self.host.sons_of(label[1])
        else:
            family = self._graft(label).family(label[2])
        return LossFamily(family, self.loss) if self.loss else family

    def son_label(self, label: Label, i: int) -> Label:
        if label[0] == "host":
            graft = self.grafts.graft_at(label[1])
            if graft is None:
                return host_label((*label[1], i))
            return graft.child((), i)
        return self._graft(label).child(label[2], i)

    def separation_of(self, label: Label) -> Fraction | None:
        if label[0] == "host":
            return self.host.separation(label[1])
        return self._graft(label).separation(label[2])

    def separation_bound(self, depth: int) -> Fraction | None:
        return self.grafts.separation_bound(depth)

    def locate(self, target: NodePath) -> NodePath | None:
        """Canonical hybrid path of a host node, None if the hybrid dropped it."""
        current: NodePath = ()
        path: NodePath = ()
        while current != target:
            graft = self.grafts.graft_at(current)
            if graft is None:
                step = target[len(current)]
                current = (*current, step)
                path = (*path, step)
                continue
            top = graft.max_node_above(target)
            if top is None:
                return None
            path = (*path, *graft.route(top))
            current = top
        return path


class HybridFoliageTree(CanonicalTree[Label]):
    """A hybrid relabeled onto the canonical skeleton."""

    labeled: HybridTree

    def __init__(self, labeled: HybridTree):
        super().__init__(labeled)

    @property
    def host(self) -> FoliageTree:
        return self.labeled.host

    @property
    def grafts(self) -> GraftFamily:
        return self.labeled.grafts

    @property
    def loss(self) -> tuple[Point, ...]:
        return self.labeled.loss

    def locate(self, host_path: NodePath) -> NodePath | None:
        return self.labeled.locate(host_path)

    def hybrid_path(self, host_path: NodePath) -> NodePath | None:
        return self.locate(host_path)


def fhybr(
    host: FoliageTree, grafts: GraftFamily, *, depth: int = 1, probe: int = 2
) -> HybridFoliageTree:
    """Foliage hybrid of `host` and `grafts`, checked omega-branching near the root."""
    tree = HybridFoliageTree(HybridTree(host, grafts))
    check_omega_branching(tree, depth, probe)
    logger.debug("Built hybrid %s", tree.description)
    return tree
