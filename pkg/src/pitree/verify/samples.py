"""Seeded point / neighborhood samples for rise and shoot checks."""

import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from ..constructions.product import ProductTree
from ..core.tree import FoliageTree
from ..errors import ConfigError
from ..points import BairePoint, Point, ProductPoint, SorgPoint
from ..symsets import Box, ClopenSet, Cyl, SorgIv, member

logger = logging.getLogger(__name__)

# Coordinates spelled out in sampled points of omega products
OMEGA_EXPLICIT = 8

# Factor neighborhoods in sampled product boxes (Baire depth, Sorgenfrey width 2^-(n+1))
PRODUCT_COARSEST = 1
PRODUCT_FINEST = 1

# Attempts per requested sample before giving up on the root leaf
_ATTEMPTS = 32


@dataclass(frozen=True)
class Sample:
    point: Point
    nbhd: ClopenSet


def product_of(tree: FoliageTree) -> ProductTree | None:
    """The product tree underneath hybrids and injected faults, if any."""
    current: object = tree
    while current is not None:
        if isinstance(current, ProductTree):
            return current
        current = getattr(current, "host", None) or getattr(current, "base", None)
    return None


def _factor_point(space: str, rng: random.Random) -> Point:
    if space == "baire":
        prefix = tuple(rng.randint(0, 3) for _ in range(rng.randint(0, 3)))
        return BairePoint(prefix, rng.randint(0, 3))
    if space == "sorg":
        return SorgPoint(Fraction(rng.randint(-18, 17), 6))
    raise ConfigError(f"No point sampler for space {space!r}")


def _factor_nbhd(
    p: Point, rng: random.Random, finest: int = 3, coarsest: int = 0
) -> ClopenSet:
    if isinstance(p, BairePoint):
        return Cyl(p.restrict(rng.randint(coarsest, finest)))
    if isinstance(p, SorgPoint):
        return SorgIv(p.value, p.value + Fraction(1, 2 ** rng.randint(coarsest, finest + 1)))
    raise ConfigError(f"No neighborhood sampler for {p}")


def _default_factor(space: str) -> Point:
    if space == "baire":
        return BairePoint((), 0)
    if space == "sorg":
        return SorgPoint(Fraction(1, 3))
    raise ConfigError(f"No default point for space {space!r}")


def random_point(tree: FoliageTree, rng: random.Random) -> Point:
    product = product_of(tree)
    if product is None:
        return _factor_point(tree.space, rng)
    count = product.lam if product.lam is not None else OMEGA_EXPLICIT
    explicit = tuple(_factor_point(product.component(i).space, rng) for i in range(count))
    if product.lam is None:
        tail = _default_factor(product.component(count).space)
    else:
        tail = explicit[-1]
    return ProductPoint(explicit, tail)


def random_nbhd(tree: FoliageTree, p: Point, rng: random.Random) -> ClopenSet:
    if not isinstance(p, ProductPoint):
        return _factor_nbhd(p, rng)
    product = product_of(tree)
    arity = product.lam if product is not None else None
    # first two coordinates only: coordinate i enters at height 2i
    coords = sorted(rng.sample(range(2), rng.randint(1, 2)))
    return Box.of(
        {
            c: _factor_nbhd(p.coordinate(c), rng, PRODUCT_FINEST, PRODUCT_COARSEST)
            for c in coords
        },
        arity,
    )


def default_point(tree: FoliageTree) -> Point:
    """A fixed point of the root leaf (constant 0, 1/3, or their product)."""
    product = product_of(tree)
    if product is None:
        candidates = [_default_factor(tree.space)]
        if tree.space == "sorg":
            candidates += [SorgPoint(Fraction(1, 5)), SorgPoint(Fraction(2, 7))]
        else:
            candidates += [BairePoint((), 1), BairePoint((), 2)]
        for p in candidates:
            if member(p, tree.root_leaf):
                return p
        raise ConfigError(f"No default point in the root leaf of {tree.description}")
    count = product.lam if product.lam is not None else OMEGA_EXPLICIT
    explicit = tuple(_default_factor(product.component(i).space) for i in range(count))
    return ProductPoint(explicit, _default_factor(product.component(count).space))


def generate_samples(tree: FoliageTree, count: int, seed: int = 0) -> list[Sample]:
    """`count` (point, neighborhood) pairs with points in the root leaf."""
    rng = random.Random(seed)
    samples: list[Sample] = []
    for _ in range(count * _ATTEMPTS):
        if len(samples) >= count:
            break
        p = random_point(tree, rng)
        if not member(p, tree.root_leaf):
            continue
        samples.append(Sample(p, random_nbhd(tree, p, rng)))
    if len(samples) < count:
        logger.warning("Only %d of %d samples fell in the root leaf", len(samples), count)
    return samples
