"""Canonical enumeration of index tuples and the box difference decomposition.

Tuples u = (l_0, ..., l_{k-1}, w_0, ..., w_{j-1}) with every l_i >= m,
min l_i = m and arbitrary w entries are enumerated by (max entry, then
lexicographic order). The w part is empty for a plain box difference.
"""

from collections.abc import Sequence
from dataclasses import dataclass

from ..errors import ArityZero
from .sets import Box, ClopenSet, Cyl, Diff, union_of, tail_cyl


@dataclass(frozen=True)
class TupleBlocks:
    """Index <-> tuple bijection for tuples with min l = m, ordered by (max, lex)."""

    k: int
    j: int
    m: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ArityZero("Box decomposition needs at least one coordinate")

    @property
    def width(self) -> int:
        return self.k + self.j

    @property
    def size(self) -> int | None:
        """Number of tuples, None when infinite."""
        return 1 if self.k == 1 and self.j == 0 else None

    def count_upto(self, top: int) -> int:
        """Number of tuples with every entry <= top."""
        if top < self.m:
            return 0
        span = top - self.m + 1
        return (span**self.k - (span - 1) ** self.k) * (top + 1) ** self.j

    def block_of(self, index: int) -> int:
        """Max entry M of the tuple at `index`."""
        if self.size is not None and index >= self.size:
            raise IndexError(f"Tuple index {index} out of range")
        top = self.m
        while self.count_upto(top) <= index:
            top += 1
        return top

    def _completions(self, top: int, placed: int, has_top: bool, has_min: bool) -> int:
        rest_l = max(self.k - placed, 0)
        rest_w = self.j - max(placed - self.k, 0)
        a = top - self.m + 1
        total = a**rest_l * (top + 1) ** rest_w
        no_top = (a - 1) ** rest_l * top**rest_w
        no_min = (a - 1) ** rest_l * (top + 1) ** rest_w
        neither = max(a - 2, 0) ** rest_l * top**rest_w
        if has_top and has_min:
            return total
        if has_top:
            return total - no_min
        if has_min:
            return total - no_top
        return total - no_top - no_min + neither

    def _choices(self, position: int, top: int) -> range:
        return range(self.m, top + 1) if position < self.k else range(0, top + 1)

    def tuple_at(self, index: int) -> tuple[int, ...]:
        top = self.block_of(index)
        offset = index - self.count_upto(top - 1)
        out: list[int] = []
        has_top = has_min = False
        for position in range(self.width):
            for value in self._choices(position, top):
                t = has_top or value == top
                mn = has_min or (position < self.k and value == self.m)
                n = self._completions(top, position + 1, t, mn)
                if offset < n:
                    out.append(value)
                    has_top, has_min = t, mn
                    break
                offset -= n
        return tuple(out)

    def index_of(self, u: Sequence[int]) -> int | None:
        u = tuple(u)
        if len(u) != self.width or min(u[: self.k]) != self.m:
            return None
        if any(x < 0 for x in u[self.k :]):
            return None
        top = max(u)
        index = self.count_upto(top - 1)
        has_top = has_min = False
        for position, actual in enumerate(u):
            for value in self._choices(position, top):
                if value == actual:
                    break
                t = has_top or value == top
                mn = has_min or (position < self.k and value == self.m)
                index += self._completions(top, position + 1, t, mn)
            has_top = has_top or actual == top
            has_min = has_min or (position < self.k and actual == self.m)
        return index

    def residual_parts(self, n: int) -> tuple[list[int], int]:
        """Split {index >= n} into explicit indices of the current block and "max > M"."""
        if self.size is not None and n >= self.size:
            return [], self.m
        top = self.block_of(n)
        return list(range(n, self.count_upto(top))), top


@dataclass(frozen=True)
class IndexedBoxes:
    """Omega-indexed disjoint family of Baire boxes prod_i S_{a_i + <l_i>} with its residuals."""

    paths: tuple[tuple[int, ...], ...]
    m: int

    @property
    def blocks(self) -> TupleBlocks:
        return TupleBlocks(len(self.paths), 0, self.m)

    @property
    def size(self) -> int | None:
        return self.blocks.size

    @property
    def whole(self) -> ClopenSet:
        """The box difference prod S~m_{a_i} minus prod S~(m+1)_{a_i}."""
        return Diff(
            Box(tuple((i, tail_cyl(a, self.m)) for i, a in enumerate(self.paths))),
            Box(tuple((i, tail_cyl(a, self.m + 1)) for i, a in enumerate(self.paths))),
        )

    def tuple_at(self, index: int) -> tuple[int, ...]:
        return self.blocks.tuple_at(index)

    def box(self, index: int) -> ClopenSet:
        u = self.tuple_at(index)
        pairs = zip(self.paths, u, strict=True)
        return Box(tuple((i, Cyl((*a, l))) for i, (a, l) in enumerate(pairs)))

    def residual(self, n: int) -> ClopenSet:
        explicit, top = self.blocks.residual_parts(n)
        bounded = Box(
            tuple(
                (i, Diff(tail_cyl(a, self.m), tail_cyl(a, top + 1)))
                for i, a in enumerate(self.paths)
            )
        )
        return union_of([*(self.box(i) for i in explicit), Diff(self.whole, bounded)])


def box_difference_decomposition(k: int, paths: Sequence[tuple[int, ...]], m: int) -> IndexedBoxes:
    """Disjoint decomposition of a k-ary box difference at level m."""
    if k < 1:
        raise ArityZero("Box decomposition needs at least one coordinate")
    if len(paths) != k:
        raise ValueError(f"Expected {k} paths, got {len(paths)}")
    return IndexedBoxes(tuple(tuple(a) for a in paths), m)
