"""Scope, shoots and rise sets of points in foliage trees."""

import logging
from dataclasses import dataclass, field

from ..errors import ConfigError, PartitionViolation, PointOutsideRoot
from ..points import Point
from ..symsets import ClopenSet, Decision, member
from .paths import NodePath, format_path
from .tree import FoliageTree, ShootDecision

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RiseSet:
    """Heights below `depth` whose scope node has a shoot inside the neighborhood.

    Heights at or beyond `depth` are unknown; `undecided` heights were
    outside the decidable algebra.
    """

    known: frozenset[int]
    depth: int
    undecided: frozenset[int] = field(default_factory=frozenset)

    def contains(self, n: int) -> bool | None:
        if n >= self.depth or n in self.undecided:
            return None
        return n in self.known

    def tail_start(self) -> int | None:
        """Least m with [m, depth) inside `known`, None if depth - 1 is not known."""
        m = self.depth
        while m > 0 and (m - 1) in self.known:
            m -= 1
        return m if m < self.depth else None

    def intersection(self, other: "RiseSet") -> "RiseSet":
        return RiseSet(
            self.known & other.known,
            min(self.depth, other.depth),
            self.undecided | other.undecided,
        )

    def sorted(self) -> list[int]:
        return sorted(self.known)


def scope(
    tree: FoliageTree,
    p: Point,
    depth: int,
    *,
    strict: bool = True,
    sons: int = 32,
    search_cap: int = 256,
) -> list[NodePath]:
    """Nodes of heights 0..depth-1 whose leaves contain `p`."""
    if depth < 0:
        raise ConfigError(f"Depth must be natural, got {depth}")
    if not member(p, tree.root_leaf):
        raise PointOutsideRoot(f"{p} is not in the root leaf of {tree.description}")
    if depth == 0:
        return []
    path: NodePath = ()
    nodes = [path]
    for _ in range(depth - 1):
        family = tree.sons_of(path)
        index = family.index_of(p, search_cap)
        if index is None or not member(p, family.leaf_at(index)):
            raise PartitionViolation(f"No son of {format_path(path)} contains {p}")
        if strict:
            for other in range(sons):
                if other != index and member(p, family.leaf_at(other)):
                    raise PartitionViolation(
                        f"Sons {index} and {other} of {format_path(path)} both contain {p}"
                    )
            if index < sons and member(p, family.residual(sons)):
                raise PartitionViolation(
                    f"Son {index} and the residual from {sons} of {format_path(path)} "
                    f"both contain {p}"
                )
        path = (*path, index)
        nodes.append(path)
    return nodes


def shoot_refines(
    tree: FoliageTree, v: NodePath, target: ClopenSet, search_cap: int = 256
) -> ShootDecision:
    """Does some cofinite set of sons of `v` have a nonempty union inside `target`?"""
    return tree.sons_of(v).eventually_within(target, search_cap)


def rise(
    tree: FoliageTree,
    p: Point,
    target: ClopenSet,
    depth: int,
    *,
    strict: bool = True,
    sons: int = 32,
    search_cap: int = 256,
) -> RiseSet:
    """Truncated rise set of (p, target) in `tree`."""
    known: set[int] = set()
    undecided: set[int] = set()
    for n, v in enumerate(scope(tree, p, depth, strict=strict, sons=sons, search_cap=search_cap)):
        outcome = shoot_refines(tree, v, target, search_cap)
        if outcome.decision == Decision.YES:
            known.add(n)
        elif outcome.decision == Decision.UNKNOWN:
            logger.debug("Undecided shoot at %s: %s", format_path(v), outcome.reason)
            undecided.add(n)
    return RiseSet(frozenset(known), depth, frozenset(undecided))
