"""Product trees over finitely or omega many factor trees.

A node at even depth 2n carries one component node a_i of height n for every
active coordinate i <= n; its leaf is the box of the component leaves. The
sons of an even node are odd nodes m, whose leaves are the box differences
"all component son indices >= m, and some equal to m". The sons of an odd
node enumerate those index tuples together with the first n+1 steps of the
next coordinate, ordered by (largest entry, lexicographic).
"""

import itertools
import logging
import threading
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from ..core.paths import NodePath, format_path
from ..core.tree import FoliageTree, SonFamily
from ..errors import ComponentNotVerified, ConfigError, LambdaTooSmall
from ..points import Point, ProductPoint
from ..symsets import EMPTY_SET, Box, ClopenSet, Diff, FinUnion, TupleBlocks
from ..symsets.forms import coordinate_forms

logger = logging.getLogger(__name__)

Assignment = dict[int, NodePath]

# Guard for the fixpoint over fresh-coordinate prefixes in OddSons.stable_start
_PREFIX_LIMIT = 4096


class IndexFamily:
    """The map (n, v, i) -> a(n, v, i) driving a product tree.

    `lam` is the number of coordinates, None for omega many.
    """

    def __init__(self, lam: int | None):
        if lam is not None and lam < 2:
            raise LambdaTooSmall(f"A product needs at least 2 coordinates, got {lam}")
        self.lam = lam
        self._cache: dict[NodePath, Assignment] = {(): {0: ()}}
        self._lock = threading.Lock()

    def has_coordinate(self, i: int) -> bool:
        return self.lam is None or i < self.lam

    def active(self, n: int) -> list[int]:
        """Coordinates in lambda intersected with n + 1."""
        top = n + 1 if self.lam is None else min(n + 1, self.lam)
        return list(range(top))

    def blocks(self, n: int, m: int) -> TupleBlocks:
        fresh = n + 1 if self.has_coordinate(n + 1) else 0
        return TupleBlocks(len(self.active(n)), fresh, m)

    def extend(self, a: Assignment, n: int, m: int, c: int) -> Assignment:
        """Assignment at v + <m, c> from the assignment `a` at v (of length 2n)."""
        coords = self.active(n)
        u = self.blocks(n, m).tuple_at(c)
        out = {i: (*a[i], u[t]) for t, i in enumerate(coords)}
        if self.has_coordinate(n + 1):
            out[n + 1] = tuple(u[len(coords) :])
        return out

    def assignment(self, v: NodePath) -> Assignment:
        if len(v) % 2:
            raise ValueError(f"Index family is defined on even paths, got {format_path(v)}")
        with self._lock:
            known = self._cache.get(v)
        if known is not None:
            return known
        parent = self.assignment(v[:-2])
        out = self.extend(parent, len(v) // 2 - 1, v[-2], v[-1])
        with self._lock:
            self._cache[v] = out
        return out

    def __call__(self, n: int, v: NodePath, i: int) -> NodePath:
        if len(v) != 2 * n:
            raise ValueError(f"Expected a path of length {2 * n}, got {format_path(v)}")
        return self.assignment(v)[i]


def build_index_family(lam: int | None) -> IndexFamily:
    return IndexFamily(lam)


class EvenSons(SonFamily):
    """Sons m of an even node: box differences between residual boxes m and m + 1."""

    def __init__(self, tree: "ProductTree", path: NodePath):
        super().__init__((tree.key, path), "product")
        self.tree = tree
        self.n = len(path) // 2
        self.assignment = tree.index.assignment(path)

    def _residuals(self, m: int) -> Box:
        return Box(
            tuple(
                (i, self.tree.component(i).sons_of(a).residual(m))
                for i, a in self.assignment.items()
            ),
            self.tree.lam,
        )

    def leaf_at(self, i: int) -> ClopenSet:
        return Diff(self._residuals(i), self._residuals(i + 1))

    def residual(self, n: int) -> ClopenSet:
        return self._residuals(n)

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        if not isinstance(point, ProductPoint):
            return None
        found = []
        for i, a in self.assignment.items():
            index = self.tree.component(i).sons_of(a).index_of(point.coordinate(i), search_cap)
            if index is None:
                return None
            found.append(index)
        return min(found)

    def stable_start(self, forms: Sequence[Any]) -> int | None:
        start = 0
        for i, a in self.assignment.items():
            own = self.tree.component(i).sons_of(a).stable_start(coordinate_forms(forms, i))
            if own is None:
                return None
            start = max(start, own)
        return start


class OddSons(SonFamily):
    """Sons c of the odd node v + <m>: boxes of the c-th index tuple.

    Residuals at the start of a block (tuples with largest entry M) are the
    parent leaf minus the box of tuples bounded by M - 1; inside a block the
    residual peels off one leaf at a time, so blocks are never spelled out.
    """

    def __init__(self, tree: "ProductTree", path: NodePath):
        super().__init__((tree.key, path), "product")
        self.tree = tree
        self.n = (len(path) - 1) // 2
        self.m = path[-1]
        self.parent = tree.sons_of(path[:-1])
        self.assignment = tree.index.assignment(path[:-1])
        self.blocks = tree.index.blocks(self.n, self.m)
        self.coords = tree.index.active(self.n)
        self.fresh = self.n + 1 if tree.index.has_coordinate(self.n + 1) else None
        self._leaves: dict[int, ClopenSet] = {}
        self._lock = threading.Lock()

    def leaf_at(self, i: int) -> ClopenSet:
        with self._lock:
            known = self._leaves.get(i)
        if known is not None:
            return known
        a = self.tree.index.extend(self.assignment, self.n, self.m, i)
        leaf = Box(
            tuple((c, self.tree.component(c).leaf(path)) for c, path in a.items()),
            self.tree.lam,
        )
        with self._lock:
            self._leaves[i] = leaf
        return leaf

    def _bounded(self, x: NodePath, steps: int, top: int) -> ClopenSet:
        """Union of the leaves x + w, len(w) = steps, every entry of w <= top."""
        tree = self.tree.component(self.n + 1)
        if steps == 0:
            return tree.leaf(x)
        if steps == 1:
            return Diff(tree.leaf(x), tree.sons_of(x).residual(top + 1))
        return FinUnion(tuple(self._bounded((*x, c), steps - 1, top) for c in range(top + 1)))

    def _bounded_box(self, top: int) -> Box:
        support: list[tuple[int, ClopenSet]] = []
        for i in self.coords:
            sons = self.tree.component(i).sons_of(self.assignment[i])
            support.append((i, Diff(sons.residual(self.m), sons.residual(top + 1))))
        if self.fresh is not None:
            support.append((self.fresh, self._bounded((), self.blocks.j, top)))
        return Box(tuple(support), self.tree.lam)

    def residual(self, n: int) -> ClopenSet:
        if self.blocks.size is not None and n >= self.blocks.size:
            return EMPTY_SET
        top = self.blocks.block_of(n)
        start = self.blocks.count_upto(top - 1)
        whole = self.parent.leaf_at(self.m)
        rest = whole if top == self.m else Diff(whole, self._bounded_box(top - 1))
        for i in range(start, n):
            rest = Diff(rest, self.leaf_at(i))
        return rest

    def index_of(self, point: Point, search_cap: int = 256) -> int | None:
        if not isinstance(point, ProductPoint):
            return None
        u: list[int] = []
        for i in self.coords:
            sons = self.tree.component(i).sons_of(self.assignment[i])
            index = sons.index_of(point.coordinate(i), search_cap)
            if index is None:
                return None
            u.append(index)
        if self.fresh is not None:
            tree = self.tree.component(self.fresh)
            x: NodePath = ()
            for _ in range(self.blocks.j):
                index = tree.sons_of(x).index_of(point.coordinate(self.fresh), search_cap)
                if index is None:
                    return None
                x = (*x, index)
            u.extend(x)
        return self.blocks.index_of(u)

    def stable_start(self, forms: Sequence[Any]) -> int | None:
        """First index of the tuples with largest entry beyond every component horizon."""
        top = self.m
        for i in self.coords:
            sons = self.tree.component(i).sons_of(self.assignment[i])
            start = sons.stable_start(coordinate_forms(forms, i))
            if start is None:
                return None
            top = max(top, start - 1)
        if self.fresh is not None and self.blocks.j > 0:
            tree = self.tree.component(self.fresh)
            fresh_forms = coordinate_forms(forms, self.fresh)
            changed = True
            while changed:
                changed = False
                if (top + 1) ** (self.blocks.j - 1) > _PREFIX_LIMIT:
                    return None
                for length in range(self.blocks.j):
                    for x in itertools.product(range(top + 1), repeat=length):
                        start = tree.sons_of(x).stable_start(fresh_forms)
                        if start is None:
                            return None
                        if start - 1 > top:
                            top = start - 1
                            changed = True
        return self.blocks.count_upto(top)


class ProductTree(FoliageTree):
    space = "product"

    def __init__(self, lam: int | None, components: Sequence[FoliageTree]):
        super().__init__()
        if not components:
            raise ConfigError("A product needs at least one component tree")
        if lam is not None and len(components) != lam:
            raise ConfigError(f"Expected {lam} component trees, got {len(components)}")
        for tree in components:
            if tree.raw:
                raise ComponentNotVerified(f"Component {tree.description} is not verified")
        self.index = build_index_family(lam)
        self.lam = lam
        self.components = list(components)
        arity = "omega" if lam is None else str(lam)
        names = ", ".join(c.description for c in self.components)
        self.description = f"product({arity}; {names})"

    def component(self, i: int) -> FoliageTree:
        return self.components[i % len(self.components)]

    @property
    def root_leaf(self) -> ClopenSet:
        return Box((), self.lam)

    def _make_family(self, path: NodePath) -> SonFamily:
        logger.debug("Product sons of %s in %s", format_path(path), self.description)
        if len(path) % 2 == 0:
            return EvenSons(self, path)
        return OddSons(self, path)

    def separation(self, path: NodePath) -> Fraction | None:
        if len(path) % 2:
            return self.separation(path[:-1])
        values = []
        for i, a in self.index.assignment(path).items():
            value = self.component(i).separation(a)
            if value is None:
                return None
            values.append(value)
        return max(values)

    def separation_bound(self, depth: int) -> Fraction | None:
        n = depth // 2
        values = []
        for i in self.index.active(n):
            value = self.component(i).separation_bound(n)
            if value is None:
                return None
            values.append(value)
        return max(values)


def product_tree(lam: int | None, components: Sequence[FoliageTree]) -> ProductTree:
    """Product tree over `components` (cycled when `lam` is None, i.e. omega)."""
    return ProductTree(lam, components)
