"""Cantor pairing, tuple coding and symbolic sets of son indices."""

from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt

from .tries import EMPTY, FULL, Trie, accepted_tuples, combine, cylinder, is_finite, member


def cantor_pair(a: int, b: int) -> int:
    """Cantor pairing: (a + b)(a + b + 1) / 2 + b."""
    s = a + b
    return s * (s + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    """Inverse of cantor_pair."""
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def tuple_code(entries: tuple[int, ...]) -> int:
    """Code a nonempty tuple by iterated pairing: code(t0, rest) = pair(t0, code(rest))."""
    if not entries:
        raise ValueError("Cannot code the empty tuple")
    code = entries[-1]
    for entry in reversed(entries[:-1]):
        code = cantor_pair(entry, code)
    return code


def tuple_decode(code: int, arity: int) -> tuple[int, ...]:
    """Inverse of tuple_code for tuples of the given arity."""
    if arity < 1:
        raise ValueError("Arity must be positive")
    out: list[int] = []
    for _ in range(arity - 1):
        head, code = cantor_unpair(code)
        out.append(head)
    out.append(code)
    return tuple(out)


@dataclass(frozen=True)
class IndexSet:
    """Set of naturals viewed as `arity`-tuples through tuple_code."""

    arity: int
    trie: Trie

    @classmethod
    def everything(cls, arity: int) -> "IndexSet":
        return cls(arity, FULL)

    @classmethod
    def nothing(cls, arity: int) -> "IndexSet":
        return cls(arity, EMPTY)

    @classmethod
    def of_class(cls, prefix: tuple[int, ...], arity: int) -> "IndexSet":
        """All codes whose tuple starts with `prefix`."""
        if len(prefix) > arity:
            raise ValueError("Class prefix longer than arity")
        return cls(arity, cylinder(prefix))

    @classmethod
    def of_codes(cls, codes: Iterable[int], arity: int) -> "IndexSet":
        trie: Trie = EMPTY
        for code in codes:
            trie = combine(trie, cylinder(tuple_decode(code, arity)), "or")
        return cls(arity, trie)

    @classmethod
    def tail(cls, start: int, arity: int) -> "IndexSet":
        """{c : c >= start}."""
        return _tail(start, arity)

    def contains(self, code: int) -> bool:
        entries = tuple_decode(code, self.arity)
        return member(self.trie, lambda i: entries[i])

    def union(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.arity, combine(self.trie, other.trie, "or"))

    def intersection(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.arity, combine(self.trie, other.trie, "and"))

    def difference(self, other: "IndexSet") -> "IndexSet":
        return IndexSet(self.arity, combine(self.trie, other.trie, "sub"))

    def combine(self, other: "IndexSet", op: str) -> "IndexSet":
        if self.arity != other.arity:
            raise ValueError("Index sets of different arity")
        return IndexSet(self.arity, combine(self.trie, other.trie, op))

    @property
    def is_empty(self) -> bool:
        return self.trie == EMPTY

    @property
    def is_everything(self) -> bool:
        return self.trie == FULL

    @property
    def is_finite(self) -> bool:
        return is_finite(self.trie, self.arity)

    def codes(self) -> list[int]:
        """Sorted members of a finite index set."""
        if not self.is_finite:
            raise ValueError("Index set is infinite")
        return sorted(tuple_code(t) for t in accepted_tuples(self.trie, self.arity))

    def members_below(self, bound: int) -> Iterator[int]:
        for code in range(bound):
            if self.contains(code):
                yield code

    def equals_tail(self, start: int) -> bool:
        return self == _tail(start, self.arity)


@lru_cache(maxsize=1024)
def _tail(start: int, arity: int) -> IndexSet:
    trie: Trie = FULL
    for code in range(start):
        trie = combine(trie, cylinder(tuple_decode(code, arity)), "sub")
    return IndexSet(arity, trie)


def runs(codes: Iterable[int]) -> list[tuple[int, int]]:
    """Group sorted codes into half-open runs [a, b) of consecutive values."""
    out: list[tuple[int, int]] = []
    for code in codes:
        if out and out[-1][1] == code:
            out[-1] = (out[-1][0], code + 1)
        else:
            out.append((code, code + 1))
    return out
