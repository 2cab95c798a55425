"""Normalized tries over sequences of naturals.

A trie denotes a set of infinite sequences (or of k-tuples when every branch
stops at depth k). `Leaf(True)` accepts everything below it, `Leaf(False)`
nothing; a `Split` maps explicit entries to subtries and sends every other
entry to the constant leaf `default`.
"""

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Leaf:
    value: bool


@dataclass(frozen=True)
class Split:
    children: tuple[tuple[int, "Trie"], ...]
    default: bool

    def child(self, key: int) -> "Trie":
        for k, sub in self.children:
            if k == key:
                return sub
        return Leaf(self.default)

    @property
    def max_key(self) -> int:
        return self.children[-1][0]


Trie = Leaf | Split

FULL = Leaf(True)
EMPTY = Leaf(False)

_OPS: dict[str, Callable[[bool, bool], bool]] = {
    "and": lambda a, b: a and b,
    "or": lambda a, b: a or b,
    "sub": lambda a, b: a and not b,
}


def make_split(children: dict[int, Trie], default: bool) -> Trie:
    """Build a normalized node: drop children equal to the default, collapse if none remain."""
    kept = tuple(sorted((k, t) for k, t in children.items() if t != Leaf(default)))
    if not kept:
        return Leaf(default)
    return Split(kept, default)


def child(node: Trie, key: int) -> Trie:
    if isinstance(node, Leaf):
        return node
    return node.child(key)


@lru_cache(maxsize=1 << 18)
def combine(a: Trie, b: Trie, op: str) -> Trie:
    """Pointwise boolean combination ("and", "or", "sub") of two tries."""
    fn = _OPS[op]
    if isinstance(a, Leaf) and isinstance(b, Leaf):
        return Leaf(fn(a.value, b.value))
    if op == "and":
        if a == EMPTY or b == FULL:
            return a
        if b == EMPTY or a == FULL:
            return b
    elif op == "or":
        if a == FULL or b == EMPTY:
            return a
        if b == FULL or a == EMPTY:
            return b
    elif op == "sub" and (a == EMPTY or b == EMPTY):
        return a
    keys: set[int] = set()
    for node in (a, b):
        if isinstance(node, Split):
            keys.update(k for k, _ in node.children)
    da = a.value if isinstance(a, Leaf) else a.default
    db = b.value if isinstance(b, Leaf) else b.default
    return make_split(
        {k: combine(child(a, k), child(b, k), op) for k in keys},
        fn(da, db),
    )


def cylinder(path: tuple[int, ...], inner: Trie = FULL) -> Trie:
    """Trie of all sequences extending `path`, continued by `inner`."""
    node = inner
    for key in reversed(path):
        node = make_split({key: node}, False)
    return node


def at_least(m: int) -> Trie:
    """One-level node accepting first entries >= m."""
    return make_split({l: EMPTY for l in range(m)}, True)


def member(node: Trie, entry: Callable[[int], int]) -> bool:
    """Membership of the sequence `entry(0), entry(1), ...`."""
    depth = 0
    while isinstance(node, Split):
        node = node.child(entry(depth))
        depth += 1
    return node.value


def subtrie(node: Trie, path: tuple[int, ...]) -> Trie:
    for key in path:
        node = child(node, key)
    return node


def split_horizon(node: Trie, path: tuple[int, ...]) -> int:
    """Least K such that entries >= K at position len(path) below `path` all behave alike."""
    sub = subtrie(node, path)
    if isinstance(sub, Leaf):
        return 0
    return sub.max_key + 1


def is_finite(node: Trie, depth: int) -> bool:
    """Whether a trie over `depth`-tuples accepts finitely many tuples."""
    if isinstance(node, Leaf):
        return not node.value or depth == 0
    if node.default:
        return False
    return all(is_finite(sub, depth - 1) for _, sub in node.children)


def accepted_tuples(node: Trie, depth: int) -> Iterator[tuple[int, ...]]:
    """Enumerate the tuples of a finite trie over `depth`-tuples, in lexicographic order."""
    if isinstance(node, Leaf):
        if node.value and depth == 0:
            yield ()
        return
    for key, sub in node.children:
        for rest in accepted_tuples(sub, depth - 1):
            yield (key, *rest)
