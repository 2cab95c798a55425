"""Lazy foliage trees and their son families."""

import logging
import threading
from abc import ABC, abstractmethod
from collections.abc import Hashable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Generic, TypeVar

from ..errors import NotOmegaBranching, OutsideAlgebra
from ..points import Point
from ..symsets import ClopenSet, Decision, is_subset, member, normalize
from ..symsets.forms import has_combs
from .paths import NodePath, format_path

logger = logging.getLogger(__name__)

L = TypeVar("L", bound=Hashable)


@dataclass(frozen=True)
class ShootDecision:
    """Outcome of a shoot test; on YES the witness is {i : i >= start}."""

    decision: str
    start: int | None = None
    reason: str = ""

    @property
    def is_yes(self) -> bool:
        return self.decision == Decision.YES


class SonFamily(ABC):
    """Omega-indexed partition of a parent leaf into son leaves.

    `leaf_at` is the closed-form template, `residual(n)` the union of all
    leaves with index >= n (so residual(0) is the parent leaf). Families are
    compared by `key`, which names the node they belong to.
    """

    n0: int = 0
    size: int | None = None

    def __init__(self, key: Hashable, space: str):
        self._key = key
        self._space = space

    @property
    def key(self) -> Hashable:
        return self._key

    @property
    def space(self) -> str:
        return self._space

    @abstractmethod
    def leaf_at(self, i: int) -> ClopenSet:
        """Leaf of son i."""

    @abstractmethod
    def residual(self, n: int) -> ClopenSet:
        """Union of the leaves of sons n, n+1, ..."""

    def explicit(self) -> list[tuple[int, ClopenSet]]:
        return [(i, self.leaf_at(i)) for i in range(self.n0)]

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        """Index of the son containing `point` (linear search fallback)."""
        if not member(point, self.residual(0)):
            return None
        for i in range(search_cap):
            if self.size is not None and i >= self.size:
                return None
            if member(point, self.leaf_at(i)):
                return i
        return None

    def horizon(self, forms: Sequence[Any]) -> tuple[int, tuple[int, ...]] | None:
        """Start K and representative sons such that every son c >= K lies inside or
        outside each form, the same way as its representative."""
        return None

    def stable_start(self, forms: Sequence[Any]) -> int | None:
        """Least N from which residual(N) <= form has a constant answer, if known."""
        found = self.horizon(forms)
        return None if found is None else found[0]

    def eventually_within(self, target: ClopenSet, search_cap: int = 256) -> ShootDecision:
        """Decide whether cofinitely many son leaves (a nonempty union) lie inside `target`.

        A finite family has every subset cofinite, so one son inside suffices there.
        """
        if self.size is not None:
            for i in range(self.size):
                if is_subset(self.leaf_at(i), target) == Decision.YES:
                    return ShootDecision(Decision.YES, i, reason=f"son {i} of a finite family")
            return ShootDecision(Decision.NO, reason="no son of a finite family fits")
        try:
            form = normalize(target)
            start = None if has_combs(form) else self.stable_start([form])
        except OutsideAlgebra as err:
            return ShootDecision(Decision.UNKNOWN, reason=str(err))
        if start is not None:
            verdict = is_subset(self.residual(start), target)
            if verdict != Decision.YES:
                return ShootDecision(verdict, reason=f"tail from {start}")
            return ShootDecision(Decision.YES, self._tighten(start, target))
        for n in range(search_cap + 1):
            if is_subset(self.residual(n), target) == Decision.YES:
                return ShootDecision(Decision.YES, self._tighten(n, target))
        return ShootDecision(Decision.UNKNOWN, reason=f"no witness below {search_cap}")

    def _tighten(self, start: int, target: ClopenSet) -> int:
        while start > self.n0 and is_subset(self.leaf_at(start - 1), target) == Decision.YES:
            start -= 1
        return start

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SonFamily) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._key!r})"


class LabeledTree(ABC, Generic[L]):
    """Foliage tree whose nodes carry arbitrary hashable labels."""

    space: str = ""
    description: str = ""

    @property
    @abstractmethod
    def root_label(self) -> L: ...

    @abstractmethod
    def leaf_of(self, label: L) -> ClopenSet: ...

    @abstractmethod
    def family_of(self, label: L) -> SonFamily: ...

    @abstractmethod
    def son_label(self, label: L, i: int) -> L: ...

    def separation_of(self, label: L) -> Fraction | None:
        return None

    def separation_bound(self, depth: int) -> Fraction | None:
        return None


class FoliageTree(ABC):
    """Lazily generated foliage tree on the canonical skeleton.

    Son families are pure functions of the path and cached per tree.
    """

    space: str = ""
    description: str = ""
    raw: bool = False

    def __init__(self) -> None:
        self._families: dict[NodePath, SonFamily] = {}
        self._lock = threading.Lock()

    @property
    def key(self) -> str:
        return self.description

    @property
    @abstractmethod
    def root_leaf(self) -> ClopenSet: ...

    @abstractmethod
    def _make_family(self, path: NodePath) -> SonFamily: ...

    def sons_of(self, path: NodePath) -> SonFamily:
        with self._lock:
            family = self._families.get(path)
        if family is None:
            family = self._make_family(path)
            with self._lock:
                family = self._families.setdefault(path, family)
        return family

    def leaf(self, path: NodePath) -> ClopenSet:
        if not path:
            return self.root_leaf
        return self.sons_of(path[:-1]).leaf_at(path[-1])

    def separation(self, path: NodePath) -> Fraction | None:
        """Size of the leaf at `path` (None when unbounded or not measured)."""
        return None

    def separation_bound(self, depth: int) -> Fraction | None:
        """Bound every separation at `depth` must reach (None when none is promised)."""
        return None

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.description})"


class CanonicalTree(FoliageTree, Generic[L]):
    """A labeled tree relabeled onto canonical paths, son order preserved."""

    def __init__(self, labeled: LabeledTree[L]):
        super().__init__()
        self.labeled = labeled
        self.space = labeled.space
        self.description = labeled.description
        self._labels: dict[NodePath, L] = {(): labeled.root_label}

    @property
    def root_leaf(self) -> ClopenSet:
        return self.labeled.leaf_of(self.labeled.root_label)

    def label_of(self, path: NodePath) -> L:
        with self._lock:
            known = self._labels.get(path)
        if known is not None:
            return known
        label = self.labeled.son_label(self.label_of(path[:-1]), path[-1])
        with self._lock:
            self._labels[path] = label
        return label

    def _make_family(self, path: NodePath) -> SonFamily:
        return self.labeled.family_of(self.label_of(path))

    def separation(self, path: NodePath) -> Fraction | None:
        return self.labeled.separation_of(self.label_of(path))

    def separation_bound(self, depth: int) -> Fraction | None:
        return self.labeled.separation_bound(depth)


def check_omega_branching(tree: FoliageTree, depth: int, probe: int = 2) -> None:
    """Raise NotOmegaBranching if a probed node above `depth` has finitely many sons."""
    frontier: list[NodePath] = [()]
    for _ in range(depth):
        next_frontier: list[NodePath] = []
        for path in frontier:
            family = tree.sons_of(path)
            if family.size is not None:
                raise NotOmegaBranching(
                    f"Node {format_path(path)} has only {family.size} sons"
                )
            next_frontier.extend((*path, i) for i in range(probe))
        frontier = next_frontier


def canonicalize(
    tree: FoliageTree | LabeledTree[Any], depth: int, probe: int = 2
) -> FoliageTree:
    """Relabel a tree onto canonical paths, checking omega-branching on probed nodes."""
    if isinstance(tree, FoliageTree):
        return tree
    canonical: CanonicalTree[Any] = CanonicalTree(tree)
    check_omega_branching(canonical, depth, probe)
    logger.debug("Canonicalized %s to depth %d", tree.description, depth)
    return canonical
