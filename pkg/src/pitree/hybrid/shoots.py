"""Bounded checks that a lazy graft preserves the shoots of its host.

For a point p in the graft's flesh and a host node y on p's branch that is
the graft root or removed by the graft, some graft position x on p's branch
(the root or an inner node) must have a shoot that pi-refines the shoot of y.
Every member of y's shoot contains a residual of y's sons, so the check runs
over residuals 0..checks-1 and over the given sample points only.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

from ..core.paths import NodePath, format_path
from ..core.tree import FoliageTree, SonFamily
from ..points import Point
from ..symsets import EMPTY_SET, ClopenSet, Decision, member, union_of
from .lazy import Label, LazyGraft, graft_label, host_label

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShootPreservation:
    """Outcome of `preserves_shoots`; `bounded` marks a check over samples only."""

    decision: str
    point: Point | None = None
    host_node: NodePath | None = None
    residual: int | None = None
    reason: str = ""
    bounded: bool = True

    @property
    def is_yes(self) -> bool:
        return self.decision == Decision.YES


def graft_scope(graft: LazyGraft, p: Point, search_cap: int = 256) -> list[NodePath]:
    """Positions of the root and the inner nodes whose leaves contain `p`."""
    pos: NodePath = ()
    positions = [pos]
    while True:
        index = graft.family(pos).index_of(p, search_cap)
        if index is None:
            return positions
        child = graft.child(pos, index)
        if child[0] != "graft":
            return positions
        pos = child[2]
        positions.append(pos)


def removed_scope(graft: LazyGraft, p: Point, depth: int, search_cap: int = 256) -> list[NodePath]:
    """The graft root and the host nodes below it on p's branch that the graft removes."""
    host = graft.host
    node = graft.root
    nodes = [node]
    for _ in range(depth):
        index = host.sons_of(node).index_of(p, search_cap)
        if index is None:
            break
        node = (*node, index)
        if graft.max_node_above(node) is not None:
            break
        nodes.append(node)
    return nodes


def preserves_shoots(
    graft: LazyGraft,
    samples: Sequence[Point],
    *,
    depth: int = 4,
    checks: int = 4,
    search_cap: int = 256,
) -> ShootPreservation:
    """Bounded test of shoot preservation on `samples` (points outside the flesh are skipped)."""
    flesh = graft.leaf(())
    undecided: ShootPreservation | None = None
    for p in samples:
        if not member(p, flesh):
            continue
        positions = graft_scope(graft, p, search_cap)
        for y in removed_scope(graft, p, depth, search_cap):
            sons = graft.host.sons_of(y)
            for n in range(checks):
                target = sons.residual(n)
                outcomes = [
                    graft.family(x).eventually_within(target, search_cap) for x in positions
                ]
                if any(o.is_yes for o in outcomes):
                    continue
                reasons = "; ".join(o.reason for o in outcomes if o.reason)
                found = ShootPreservation(Decision.NO, p, y, n, reasons)
                if any(o.decision == Decision.UNKNOWN for o in outcomes):
                    found = ShootPreservation(Decision.UNKNOWN, p, y, n, reasons)
                    undecided = undecided or found
                    continue
                logger.debug("Graft %r loses the shoot of %s at %s", graft, format_path(y), p)
                return found
    if undecided is not None:
        return undecided
    return ShootPreservation(Decision.YES, reason=f"{len(samples)} samples, {checks} residuals")


class _BlockSons(SonFamily):
    """Finite block of host sons [lo, lo + size)."""

    def __init__(self, host_sons: SonFamily, lo: int, size: int):
        super().__init__(("block", host_sons.key, lo, size), host_sons.space)
        self.host_sons = host_sons
        self.lo = lo
        self.size = size

    def leaf_at(self, i: int) -> ClopenSet:
        return self.host_sons.leaf_at(self.lo + i)

    def residual(self, n: int) -> ClopenSet:
        size = self.size or 0
        return union_of([self.host_sons.leaf_at(self.lo + i) for i in range(n, size)])


class _ShiftedSons(SonFamily):
    """Host sons from `lo` on, renumbered from 0."""

    def __init__(self, host_sons: SonFamily, lo: int):
        super().__init__(("shifted", host_sons.key, lo), host_sons.space)
        self.host_sons = host_sons
        self.lo = lo

    def leaf_at(self, i: int) -> ClopenSet:
        return self.host_sons.leaf_at(self.lo + i)

    def residual(self, n: int) -> ClopenSet:
        return self.host_sons.residual(self.lo + n)

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        index = self.host_sons.index_of(point, search_cap)
        return None if index is None or index < self.lo else index - self.lo


class _SplitRootSons(SonFamily):
    size = 2

    def __init__(self, graft: "SplitGraft"):
        super().__init__(("split", graft.host.key, graft.root, graft.split), graft.host.space)
        self.graft = graft

    def leaf_at(self, i: int) -> ClopenSet:
        return self.graft.family((i,)).residual(0)

    def residual(self, n: int) -> ClopenSet:
        if n >= 2:
            return EMPTY_SET
        return union_of([self.leaf_at(i) for i in range(n, 2)])


class SplitGraft(LazyGraft):
    """Root with two inner sons: host sons below `split`, and the rest.

    The first inner node unions only finitely many host sons, so its shoot
    cannot refine the residuals of the root beyond `split`.
    """

    def __init__(self, host: FoliageTree, root: NodePath, split: int):
        super().__init__(host, root)
        self.split = split
        host_sons = host.sons_of(root)
        self._inner = {
            (0,): _BlockSons(host_sons, 0, split),
            (1,): _ShiftedSons(host_sons, split),
        }
        self._root = _SplitRootSons(self)

    def family(self, pos: NodePath) -> SonFamily:
        if not pos:
            return self._root
        return self._inner[pos]

    def child(self, pos: NodePath, i: int) -> Label:
        if not pos:
            return graft_label(self.root, (i,))
        offset = 0 if pos == (0,) else self.split
        return host_label((*self.root, offset + i))

    def max_node_above(self, target: NodePath) -> NodePath | None:
        if len(target) <= len(self.root) or target[: len(self.root)] != self.root:
            return None
        return target[: len(self.root) + 1]

    def route(self, max_node: NodePath) -> NodePath:
        c = max_node[-1]
        return (0, c) if c < self.split else (1, c - self.split)
