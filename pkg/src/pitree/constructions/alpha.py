"""Strictly increasing maps omega -> omega, with the convention alpha(-1) = -1."""

from abc import ABC, abstractmethod
from collections.abc import Sequence

from ..errors import AlphaNotIncreasing

# Prefix on which strict increase is checked for table-driven maps
CHECK_PREFIX = 64


class Alpha(ABC):
    description: str = ""

    def __call__(self, n: int) -> int:
        if n < -1:
            raise ValueError(f"alpha is defined from -1 on, got {n}")
        return -1 if n == -1 else self._value(n)

    @abstractmethod
    def _value(self, n: int) -> int: ...

    def gap(self, n: int) -> int:
        """alpha(n) - alpha(n - 1)."""
        return self(n) - self(n - 1)

    def floor_height(self, depth: int) -> int:
        """Largest h with alpha(h - 1) + 1 <= depth."""
        h = 0
        while self(h) + 1 <= depth:
            h += 1
        return h

    def check_increasing(self, prefix: int = CHECK_PREFIX) -> None:
        previous = -1
        for n in range(prefix):
            value = self(n)
            if value <= previous:
                raise AlphaNotIncreasing(
                    f"{self.description}: alpha({n}) = {value} <= alpha({n - 1}) = {previous}"
                )
            previous = value

    def __repr__(self) -> str:
        return f"Alpha({self.description})"


class IdentityAlpha(Alpha):
    description = "identity"

    def _value(self, n: int) -> int:
        return n


class AffineAlpha(Alpha):
    def __init__(self, scale: int, offset: int):
        self.scale = scale
        self.offset = offset
        self.description = f"affine({scale}, {offset})"

    def _value(self, n: int) -> int:
        return self.scale * n + self.offset


class TableAlpha(Alpha):
    """Listed values, then steps of `tail_step` after the last one."""

    def __init__(self, values: Sequence[int], tail_step: int):
        if not values:
            raise AlphaNotIncreasing("A table map needs at least one value")
        self.values = tuple(values)
        self.tail_step = tail_step
        self.description = f"table({list(self.values)}, {tail_step})"

    def _value(self, n: int) -> int:
        if n < len(self.values):
            return self.values[n]
        return self.values[-1] + self.tail_step * (n - len(self.values) + 1)


def identity() -> Alpha:
    return IdentityAlpha()


def affine(scale: int, offset: int) -> Alpha:
    """n -> scale * n + offset; 2n+1 is affine(2, 1)."""
    if scale < 1 or offset < 0:
        raise AlphaNotIncreasing(f"affine({scale}, {offset}) is not strictly increasing on omega")
    return AffineAlpha(scale, offset)


def table(values: Sequence[int], tail_step: int) -> Alpha:
    if tail_step < 1:
        raise AlphaNotIncreasing(f"Tail step must be positive, got {tail_step}")
    alpha = TableAlpha(values, tail_step)
    alpha.check_increasing(len(alpha.values) + 1)
    return alpha
