"""Shifting filter certificates so that rescaled rise families meet.

Given per-coordinate families delta_n (and refining certificates gamma_n for
n >= 1), the shift picks increasing sequences f_i(n), a sequence h_i growing
faster than every f, and maps alpha_n sending f_l(n) to h_{n+l}. All choices
are the least admissible ones, so results are canonical.
"""

import logging
import math
import threading
from abc import ABC, abstractmethod
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

from ..errors import ConfigError, FIPViolation, LambdaTooSmall, NotRefining
from .alpha import Alpha

logger = logging.getLogger(__name__)

# Members of each certificate inspected by refinement and intersection checks
CHECK_MEMBERS = 16


class OmegaSet(ABC):
    """A subset of omega with exact membership."""

    @property
    @abstractmethod
    def description(self) -> str: ...

    @abstractmethod
    def contains(self, x: int) -> bool: ...

    @property
    @abstractmethod
    def is_infinite(self) -> bool: ...

    @property
    def threshold(self) -> int | None:
        """From here on membership is periodic with `period`; None if not periodic."""
        return None

    @property
    def period(self) -> int:
        return 1

    def elements(self, bound: int) -> list[int]:
        return [x for x in range(bound) if self.contains(x)]

    def next_after(self, x: int, bound: int) -> int | None:
        for y in range(max(x + 1, 0), bound):
            if self.contains(y):
                return y
        return None

    def __repr__(self) -> str:
        return self.description


@dataclass(frozen=True, repr=False)
class FiniteSet(OmegaSet):
    members: frozenset[int]

    @property
    def description(self) -> str:
        return "{" + ",".join(map(str, sorted(self.members))) + "}"

    def contains(self, x: int) -> bool:
        return x in self.members

    @property
    def is_infinite(self) -> bool:
        return False

    @property
    def threshold(self) -> int | None:
        return max(self.members, default=-1) + 1


@dataclass(frozen=True, repr=False)
class Cofinite(OmegaSet):
    """omega minus `excluded`."""

    excluded: frozenset[int]

    @property
    def description(self) -> str:
        return "omega-{" + ",".join(map(str, sorted(self.excluded))) + "}"

    def contains(self, x: int) -> bool:
        return x >= 0 and x not in self.excluded

    @property
    def is_infinite(self) -> bool:
        return True

    @property
    def threshold(self) -> int | None:
        return max(self.excluded, default=-1) + 1


@dataclass(frozen=True, repr=False)
class Progression(OmegaSet):
    """{offset + step * t : t in omega}, restricted to values >= floor."""

    step: int
    offset: int = 0
    floor: int = 0

    def __post_init__(self) -> None:
        if self.step < 1 or self.offset < 0:
            raise ConfigError(f"Invalid progression step={self.step} offset={self.offset}")

    @property
    def description(self) -> str:
        return f"{self.step}N+{self.offset}>={self.floor}"

    def contains(self, x: int) -> bool:
        return x >= self.floor and x >= self.offset and (x - self.offset) % self.step == 0

    @property
    def is_infinite(self) -> bool:
        return True

    @property
    def threshold(self) -> int | None:
        return max(self.floor, self.offset)

    @property
    def period(self) -> int:
        return self.step


@dataclass(frozen=True, repr=False)
class Enumerated(OmegaSet):
    """Range of a strictly increasing enumerator."""

    fn: Callable[[int], int]
    name: str = "enumerated"

    @property
    def description(self) -> str:
        return self.name

    def contains(self, x: int) -> bool:
        t = 0
        while True:
            value = self.fn(t)
            if value == x:
                return True
            if value > x:
                return False
            t += 1

    @property
    def is_infinite(self) -> bool:
        return True

    def elements(self, bound: int) -> list[int]:
        out = []
        t = 0
        while (value := self.fn(t)) < bound:
            out.append(value)
            t += 1
        return out


def omega_subset(a: OmegaSet, b: OmegaSet, bound: int) -> bool:
    """a <= b; exact when both are periodic, checked below `bound` otherwise."""
    if isinstance(a, FiniteSet):
        return all(b.contains(x) for x in a.members)
    if a.threshold is None or b.threshold is None:
        return all(b.contains(x) for x in a.elements(bound))
    span = max(a.threshold, b.threshold) + math.lcm(a.period, b.period)
    return all(b.contains(x) for x in range(span) if a.contains(x))


def common_after(sets: Iterable[OmegaSet], x: int, bound: int) -> int | None:
    """Least element > x of the intersection, searched below `bound`."""
    members = list(sets)
    for y in range(max(x + 1, 0), bound):
        if all(s.contains(y) for s in members):
            return y
    return None


@dataclass(frozen=True)
class FilterCert:
    """A countable family of subsets of omega, listed or lazily indexed.

    A listed family repeats its last member, so `member(i)` is total.
    """

    name: str
    members: tuple[OmegaSet, ...] = ()
    generator: Callable[[int], OmegaSet] | None = None

    def __post_init__(self) -> None:
        if not self.members and self.generator is None:
            raise ConfigError(f"Certificate {self.name} has no members")

    @property
    def size(self) -> int | None:
        return None if self.generator is not None else len(self.members)

    def member(self, i: int) -> OmegaSet:
        if self.generator is not None:
            return self.generator(i)
        return self.members[min(i, len(self.members) - 1)]

    def prefix(self, n: int) -> list[OmegaSet]:
        count = n if self.size is None else min(n, self.size)
        return [self.member(i) for i in range(count)]


def cofinite() -> FilterCert:
    """{omega minus m : m in omega}."""
    return FilterCert("cofinite", generator=lambda m: Cofinite(frozenset(range(m))))


def cofinite_upto(top: int) -> FilterCert:
    """{omega minus m : m <= top}."""
    return FilterCert(
        f"cofinite<={top}", tuple(Cofinite(frozenset(range(m))) for m in range(top + 1))
    )


def progression(step: int) -> FilterCert:
    """{step * N minus m : m in omega}."""
    return FilterCert(f"progression({step})", generator=lambda m: Progression(step, 0, m))


class ShiftedAlpha(Alpha):
    """Least strictly increasing map extending f_l(n) -> h_{n+l}."""

    def __init__(self, result: "ShiftResult", n: int):
        self.result = result
        self.n = n
        self.description = f"shift({n})"

    def _value(self, x: int) -> int:
        level = -1
        while self.result.f(level + 1, self.n) <= x:
            level += 1
        return self.result.h(self.n + level) + (x - self.result.f(level, self.n))


class ShiftResult:
    """Lazily computed f, h and alpha of a filter shift."""

    def __init__(
        self,
        delta: Sequence[FilterCert],
        gamma: Sequence[FilterCert],
        search_bound: int,
    ):
        self.lam = len(delta)
        self.delta = list(delta)
        self.gamma = list(gamma)
        self.search_bound = search_bound
        self._f: dict[int, list[int]] = {}
        self._h: list[int] = []
        self._lock = threading.RLock()

    def _next_f(self, n: int, i: int, previous: int) -> int:
        if n == 0:
            found = self.delta[0].member(0).next_after(previous, self.search_bound)
        else:
            sets = [self.gamma[n - 1].member(j) for j in range(i + 1)]
            found = common_after(sets, previous, self.search_bound)
        if found is None:
            raise FIPViolation(
                f"No f_{i}({n}) above {previous} below {self.search_bound}"
            )
        return found

    def f(self, i: int, n: int) -> int:
        if i == -1:
            return -1
        with self._lock:
            values = self._f.setdefault(n, [])
            while len(values) <= i:
                previous = values[-1] if values else -1
                values.append(self._next_f(n, len(values), previous))
            return values[i]

    def h(self, i: int) -> int:
        if i == -1:
            return -1
        with self._lock:
            while len(self._h) <= i:
                k = len(self._h)
                previous = self._h[-1] if self._h else -1
                value = previous + 1
                for j in range(min(k, self.lam - 1) + 1):
                    step = self.f(k - j, j) - self.f(k - j - 1, j)
                    value = max(value, previous + step + 1)
                self._h.append(value)
            return self._h[i]

    def support(self, n: int, count: int) -> list[int]:
        """First `count` elements of F(n)."""
        return [self.f(i, n) for i in range(count)]

    def alpha(self, n: int) -> Alpha:
        if not 0 <= n < self.lam:
            raise IndexError(f"No coordinate {n} in a shift of {self.lam}")
        return ShiftedAlpha(self, n)

    def alphas(self) -> list[Alpha]:
        return [self.alpha(n) for n in range(self.lam)]

    def image(self, n: int, d: OmegaSet, bound: int) -> set[int]:
        """alpha_n[d] intersected with [0, bound)."""
        alpha = self.alpha(n)
        out = set()
        for x in d.elements(bound):
            value = alpha(x)
            if value >= bound:
                break
            out.add(value)
        return out


def _check_refines(gamma: FilterCert, delta: FilterCert, n: int, bound: int) -> None:
    candidates = [g for g in gamma.prefix(CHECK_MEMBERS) if g.next_after(-1, bound) is not None]
    for d in delta.prefix(CHECK_MEMBERS):
        if d.next_after(-1, bound) is None:
            continue
        if not any(omega_subset(g, d, bound) for g in candidates):
            raise NotRefining(f"No member of {gamma.name} inside {d!r} (coordinate {n})")


def shift_filters(
    delta: Sequence[FilterCert],
    gamma: Sequence[FilterCert],
    search_bound: int = 10_000,
) -> ShiftResult:
    """Shift the families `delta`; gamma[n - 1] certifies coordinate n >= 1."""
    if len(delta) < 2:
        raise LambdaTooSmall(f"A shift needs at least 2 coordinates, got {len(delta)}")
    if len(gamma) != len(delta) - 1:
        raise ConfigError(f"Expected {len(delta) - 1} gamma certificates, got {len(gamma)}")
    first = delta[0].member(0)
    if not first.is_infinite:
        raise FIPViolation(f"The first member {first!r} of {delta[0].name} is finite")
    if common_after(delta[0].prefix(CHECK_MEMBERS), -1, search_bound) is None:
        raise FIPViolation(f"{delta[0].name} has an empty finite intersection")
    for n in range(1, len(delta)):
        _check_refines(gamma[n - 1], delta[n], n, search_bound)
    logger.debug(
        "Shifting %s by %s",
        [d.name for d in delta],
        [g.name for g in gamma],
    )
    return ShiftResult(delta, gamma, search_bound)
