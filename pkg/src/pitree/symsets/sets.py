"""Symbolic clopen sets used as leaves."""

from collections.abc import Hashable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Protocol

from ..points import Point, point_key
from .indices import IndexSet


class IndexedPartition(Protocol):
    """An omega-indexed partition of a parent leaf (a son family seen from the set algebra)."""

    @property
    def key(self) -> Hashable: ...

    @property
    def space(self) -> str: ...

    def leaf_at(self, i: int) -> "ClopenSet": ...

    def residual(self, n: int) -> "ClopenSet": ...

    def index_of(self, point: Point) -> int | None: ...

    def horizon(self, forms: Sequence[Any]) -> tuple[int, tuple[int, ...]] | None: ...


@dataclass(frozen=True)
class Empty:
    def __str__(self) -> str:
        return "{}"


@dataclass(frozen=True)
class Cyl:
    """Baire cylinder of all sequences extending `path`."""

    path: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"S<{','.join(map(str, self.path))}>"


@dataclass(frozen=True)
class TailCyl:
    """Union of the cylinders path + <l> for l >= m."""

    path: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("Tail index must be natural")

    def __str__(self) -> str:
        return f"S~{self.m}<{','.join(map(str, self.path))}>"


@dataclass(frozen=True)
class SorgIv:
    """Half-open interval [lo, hi); None means -inf / +inf."""

    lo: Fraction | None
    hi: Fraction | None

    def __post_init__(self) -> None:
        lo = None if self.lo is None else Fraction(self.lo)
        hi = None if self.hi is None else Fraction(self.hi)
        if lo is not None and hi is not None and lo >= hi:
            raise ValueError(f"Empty interval [{lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __str__(self) -> str:
        lo = "-inf" if self.lo is None else str(self.lo)
        hi = "inf" if self.hi is None else str(self.hi)
        return f"[{lo},{hi})"


@dataclass(frozen=True)
class Points:
    """Finite set of points."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(sorted(set(self.points), key=point_key)))

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.points) + "}"


@dataclass(frozen=True)
class Minus:
    """`base` with finitely many points removed."""

    base: "ClopenSet"
    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(sorted(set(self.points), key=point_key)))

    def __str__(self) -> str:
        return f"{self.base} - {Points(self.points)}"


@dataclass(frozen=True)
class FinUnion:
    """Union of pairwise disjoint members (disjointness checked on normalization)."""

    members: tuple["ClopenSet", ...]

    def __str__(self) -> str:
        return " | ".join(str(m) for m in self.members) if self.members else "{}"


@dataclass(frozen=True)
class Box:
    """Finitely supported product set; unsupported coordinates are the whole factor."""

    support: tuple[tuple[int, "ClopenSet"], ...]
    arity: int | None = None

    def __post_init__(self) -> None:
        support = tuple(sorted(self.support, key=lambda kv: kv[0]))
        coords = [c for c, _ in support]
        if len(set(coords)) != len(coords):
            raise ValueError("Box support coordinates must be distinct")
        if self.arity is not None and any(c < 0 or c >= self.arity for c in coords):
            raise ValueError("Box coordinate outside the product")
        object.__setattr__(self, "support", support)

    @classmethod
    def of(cls, support: Mapping[int, "ClopenSet"], arity: int | None = None) -> "Box":
        return cls(tuple(support.items()), arity)

    def __str__(self) -> str:
        inner = " x ".join(f"{c}:{s}" for c, s in self.support)
        return f"<{inner}>"


@dataclass(frozen=True)
class Diff:
    """Set difference `base` minus `removed`."""

    base: "ClopenSet"
    removed: "ClopenSet"

    def __str__(self) -> str:
        return f"({self.base} \\ {self.removed})"


@dataclass(frozen=True)
class SonUnion:
    """Union of the leaves of `family` over the index set `indices`."""

    family: IndexedPartition
    indices: IndexSet

    def __str__(self) -> str:
        return f"U{{sons of {self.family.key} in class}}"


ClopenSet = Empty | Cyl | TailCyl | SorgIv | Points | Minus | FinUnion | Box | Diff | SonUnion

EMPTY_SET = Empty()
BAIRE = Cyl(())
SORG_LINE = SorgIv(None, None)


def tail_cyl(path: tuple[int, ...], m: int) -> ClopenSet:
    """TailCyl with the m = 0 case folded into the plain cylinder."""
    return Cyl(path) if m == 0 else TailCyl(path, m)


def union_of(members: Sequence[ClopenSet]) -> ClopenSet:
    kept = tuple(m for m in members if not isinstance(m, Empty))
    if not kept:
        return EMPTY_SET
    if len(kept) == 1:
        return kept[0]
    return FinUnion(kept)
