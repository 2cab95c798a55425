"""Removing finitely many points from a foliage tree.

Points are handled in order. Point p_i is cut at the node z_i whose leaf
contains it among the nodes left by earlier cuts; there a two-level graft
replaces the branch of p_i below z_i by the off-branch sons of every node on
it. The graft's sons are indexed by cantor_pair(j, c), j the level on the
branch and c the son index at that level with the branch son skipped.
"""

import logging
import threading
from collections.abc import Sequence
from dataclasses import dataclass

from ..core.paths import NodePath, format_path
from ..core.tree import FoliageTree, ShootDecision, SonFamily
from ..errors import (
    ConfigError,
    DuplicatePoint,
    OutsideAlgebra,
    PartitionViolation,
    PointOutsideRoot,
)
from ..hybrid.lazy import GraftFamily, HybridFoliageTree, Label, LazyGraft, fhybr, host_label
from ..points import Point
from ..symsets import (
    ClopenSet,
    Decision,
    Diff,
    Minus,
    cantor_pair,
    cantor_unpair,
    is_disjoint,
    is_subset,
    member,
    normalize,
    union_of,
)
from ..symsets.forms import FactorForm, form_member

logger = logging.getLogger(__name__)

# Branch levels inspected before a shoot test gives up
CHAIN_CAP = 64


def _first_column(n: int) -> int:
    """Least j with cantor_pair(j, 0) >= n."""
    j = 0
    while cantor_pair(j, 0) < n:
        j += 1
    return j


def _first_row(j: int, n: int) -> int:
    """Least c with cantor_pair(j, c) >= n."""
    c = 0
    while cantor_pair(j, c) < n:
        c += 1
    return c


class BranchSons(SonFamily):
    """Off-branch sons of the branch of `point` below `root`, flattened into one family."""

    def __init__(self, graft: "FlattenedGraft"):
        super().__init__(("cut", graft.host.key, graft.root, graft.point), graft.host.space)
        self.graft = graft
        self.host = graft.host

    def _son(self, i: int) -> NodePath:
        j, c = cantor_unpair(i)
        if c >= self.graft.branch_index(j):
            c += 1
        return (*self.graft.node(j), c)

    def leaf_at(self, i: int) -> ClopenSet:
        return self.host.leaf(self._son(i))

    def residual(self, n: int) -> ClopenSet:
        top = _first_column(n)
        pieces: list[ClopenSet] = []
        for j in range(top):
            sons = self.host.sons_of(self.graft.node(j))
            start = _first_row(j, n)
            if start <= self.graft.branch_index(j):
                pieces.append(Diff(sons.residual(start), self.host.leaf(self.graft.node(j + 1))))
            else:
                pieces.append(sons.residual(start + 1))
        pieces.append(Minus(self.host.leaf(self.graft.node(top)), (self.graft.point,)))
        return union_of(pieces)

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        if point == self.graft.point:
            return None
        for j in range(search_cap):
            c = self.host.sons_of(self.graft.node(j)).index_of(point, search_cap)
            if c is None:
                return None
            e = self.graft.branch_index(j)
            if c != e:
                return cantor_pair(j, c if c < e else c - 1)
        return None

    def _outside_base(self, target: ClopenSet) -> bool:
        """The cut point lies outside the open part of `target` (finite flips ignored)."""
        form = normalize(target)
        if not isinstance(form, FactorForm) or form.combs:
            return False
        return not form_member(FactorForm(form.space, form.base), self.graft.point)

    def eventually_within(self, target: ClopenSet, search_cap: int = 256) -> ShootDecision:
        p = self.graft.point
        try:
            if self._outside_base(target):
                return ShootDecision(Decision.NO, reason=f"{p} is not inside the target")
            deep = None
            for j in range(min(search_cap, CHAIN_CAP)):
                rest = Minus(self.host.leaf(self.graft.node(j)), (p,))
                if is_subset(rest, target) == Decision.YES:
                    deep = j
                    break
                if is_disjoint(rest, target) == Decision.YES:
                    return ShootDecision(Decision.NO, reason=f"branch from level {j} misses it")
        except OutsideAlgebra as err:
            return ShootDecision(Decision.UNKNOWN, reason=str(err))
        if deep is None:
            return ShootDecision(Decision.UNKNOWN, reason=f"branch undecided below {CHAIN_CAP}")
        start = 0
        for j in range(deep):
            outcome = self.host.sons_of(self.graft.node(j)).eventually_within(target, search_cap)
            if not outcome.is_yes:
                return ShootDecision(outcome.decision, reason=f"level {j}: {outcome.reason}")
            assert outcome.start is not None
            shifted = outcome.start - (outcome.start > self.graft.branch_index(j))
            if shifted >= 1:
                start = max(start, cantor_pair(j, shifted - 1) + 1)
        verdict = is_subset(self.residual(start), target)
        if verdict != Decision.YES:
            return ShootDecision(verdict, reason=f"tail from {start}")
        return ShootDecision(Decision.YES, self._tighten(start, target))


class FlattenedGraft(LazyGraft):
    """Two-level graft at `root`: max nodes are the off-branch sons along `point`'s branch."""

    def __init__(self, host: FoliageTree, root: NodePath, point: Point):
        super().__init__(host, root)
        self.point = point
        self.cut = (point,)
        self._branch: list[int] = []
        self._lock = threading.Lock()
        self._sons = BranchSons(self)

    def branch_index(self, j: int) -> int:
        """Son index of the branch at level j below the root."""
        with self._lock:
            while len(self._branch) <= j:
                node = (*self.root, *self._branch)
                index = self.host.sons_of(node).index_of(self.point)
                if index is None:
                    raise PartitionViolation(f"No son of {format_path(node)} contains {self.point}")
                self._branch.append(index)
            return self._branch[j]

    def node(self, j: int) -> NodePath:
        """Branch node u_j (u_0 is the root)."""
        if j > 0:
            self.branch_index(j - 1)
        with self._lock:
            return (*self.root, *self._branch[:j])

    def family(self, pos: NodePath) -> SonFamily:
        if pos:
            raise IndexError("A flattened graft has no inner positions")
        return self._sons

    def child(self, pos: NodePath, i: int) -> Label:
        return host_label(self._sons._son(i))

    def max_node_above(self, target: NodePath) -> NodePath | None:
        j = 0
        while True:
            node = self.node(j)
            if len(target) == len(node):
                return None
            c = target[len(node)]
            if c != self.branch_index(j):
                return (*node, c)
            j += 1

    def route(self, max_node: NodePath) -> NodePath:
        j = len(max_node) - len(self.root) - 1
        c = max_node[-1]
        e = self.branch_index(j)
        return (cantor_pair(j, c if c < e else c - 1),)


@dataclass(frozen=True)
class CutStage:
    """Where point `point` was cut."""

    index: int
    point: Point
    root: NodePath


class CocountableGrafts(GraftFamily):
    """Flattened grafts cutting the points of `points`, in order."""

    def __init__(self, host: FoliageTree, points: Sequence[Point], search_cap: int = 256):
        super().__init__(host)
        if host.space == "product":
            raise ConfigError("Points can only be removed from trees on a factor space")
        if len(set(points)) != len(points):
            raise DuplicatePoint("Removed points must be pairwise distinct")
        for p in points:
            if not member(p, host.root_leaf):
                raise PointOutsideRoot(f"{p} is not in the root leaf of {host.description}")
        self.points = tuple(points)
        self.search_cap = search_cap
        names = ", ".join(str(p) for p in self.points)
        self.description = f"cocountable({host.description}, [{names}])"
        self._by_root: dict[NodePath, FlattenedGraft] = {}
        self.stages: list[CutStage] = []
        for i, p in enumerate(self.points):
            root = self._cut_node(p)
            self._by_root[root] = FlattenedGraft(host, root, p)
            self.stages.append(CutStage(i, p, root))
            logger.debug("Cut %s at %s", p, format_path(root))

    def _cut_node(self, p: Point) -> NodePath:
        z: NodePath = ()
        while z in self._by_root:
            graft = self._by_root[z]
            top = None
            for j in range(self.search_cap):
                node = graft.node(j)
                c = self.host.sons_of(node).index_of(p, self.search_cap)
                if c is None:
                    raise PartitionViolation(f"No son of {format_path(node)} contains {p}")
                if c != graft.branch_index(j):
                    top = (*node, c)
                    break
            if top is None:
                raise PartitionViolation(f"{p} and {graft.point} not separated by depth cap")
            index = self.host.sons_of(top).index_of(p, self.search_cap)
            if index is None:
                raise PartitionViolation(f"No son of {format_path(top)} contains {p}")
            z = (*top, index)
        return z

    @property
    def roots(self) -> list[NodePath]:
        return [stage.root for stage in self.stages]

    def graft_at(self, root: NodePath) -> LazyGraft | None:
        return self._by_root.get(root)

    @property
    def loss(self) -> tuple[Point, ...]:
        return self.points

    def flattened(self, root: NodePath) -> FlattenedGraft:
        return self._by_root[root]


def cocountable_tree(
    tree: FoliageTree,
    points: Sequence[Point],
    *,
    depth: int = 1,
    probe: int = 2,
    search_cap: int = 256,
) -> FoliageTree:
    """A foliage tree on the root leaf of `tree` minus `points`."""
    if not points:
        return tree
    grafts = CocountableGrafts(tree, points, search_cap)
    hybrid: HybridFoliageTree = fhybr(tree, grafts, depth=depth, probe=probe)
    return hybrid
