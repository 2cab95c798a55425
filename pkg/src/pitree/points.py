"""Exactly representable points of Baire space, the Sorgenfrey line and their products."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any


@dataclass(frozen=True)
class BairePoint:
    """Eventually constant sequence: prefix entries, then `tail` forever."""

    prefix: tuple[int, ...] = ()
    tail: int = 0

    def __post_init__(self) -> None:
        prefix = tuple(int(x) for x in self.prefix)
        if any(x < 0 for x in prefix) or self.tail < 0:
            raise ValueError("Baire point entries must be natural numbers")
        end = len(prefix)
        while end > 0 and prefix[end - 1] == self.tail:
            end -= 1
        object.__setattr__(self, "prefix", prefix[:end])

    def at(self, i: int) -> int:
        """Return the i-th entry."""
        return self.prefix[i] if i < len(self.prefix) else self.tail

    def restrict(self, n: int) -> tuple[int, ...]:
        """Return the first n entries."""
        return tuple(self.at(i) for i in range(n))

    def __str__(self) -> str:
        body = ",".join(str(x) for x in self.prefix)
        return f"<{body}|{self.tail}...>"


@dataclass(frozen=True)
class SorgPoint:
    """Rational point of the Sorgenfrey line."""

    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))

    def __str__(self) -> str:
        return format_rational(self.value)


@dataclass(frozen=True)
class ProductPoint:
    """Point of a product: explicit coordinates, then `tail` in every remaining one."""

    explicit: tuple["Point", ...]
    tail: "Point"

    def __post_init__(self) -> None:
        explicit = tuple(self.explicit)
        end = len(explicit)
        while end > 0 and explicit[end - 1] == self.tail:
            end -= 1
        object.__setattr__(self, "explicit", explicit[:end])

    def coordinate(self, i: int) -> "Point":
        """Return the i-th coordinate."""
        return self.explicit[i] if i < len(self.explicit) else self.tail

    def __str__(self) -> str:
        body = ", ".join(str(p) for p in self.explicit)
        return f"({body}; {self.tail}...)"


Point = BairePoint | SorgPoint | ProductPoint


def space_of(p: Point) -> str:
    """Return the space tag of a point ("baire", "sorg" or "product")."""
    if isinstance(p, BairePoint):
        return "baire"
    if isinstance(p, SorgPoint):
        return "sorg"
    return "product"


def point_key(p: Point) -> tuple[Any, ...]:
    """Total sort key, used to keep point sets in a deterministic order."""
    if isinstance(p, BairePoint):
        return (0, p.prefix, p.tail)
    if isinstance(p, SorgPoint):
        return (1, p.value)
    return (2, tuple(point_key(q) for q in p.explicit), point_key(p.tail))


def format_rational(q: Fraction) -> str:
    """Format a rational exactly as "a/b" (or "a" for integers)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str | int) -> Fraction:
    """Parse "a/b", "a" or an int into a Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"Invalid rational: {text!r}") from err
