"""Product of rescaled components: shift the certificates, rescale, then take the product."""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

from ..core.tree import FoliageTree
from ..errors import LambdaTooSmall
from ..hybrid.lazy import HybridFoliageTree
from .product import ProductTree
from .rescale import rescale_tree
from .shift import FilterCert, ShiftResult, shift_filters

logger = logging.getLogger(__name__)


class PipelineTree(ProductTree):
    """Product tree that keeps the shift and the rescaled components it was built from."""

    def __init__(
        self,
        shift: ShiftResult,
        sources: Sequence[FoliageTree],
        certs: Sequence[FilterCert],
        rescaled: Sequence[HybridFoliageTree],
    ):
        super().__init__(len(rescaled), rescaled)
        self.shift = shift
        self.sources = list(sources)
        self.certs = list(certs)
        self.rescaled = list(rescaled)
        pairs = zip(sources, certs, strict=True)
        parts = ", ".join(f"{t.description} / {c.name}" for t, c in pairs)
        self.description = f"pipeline({parts})"


def pipeline_tree(
    components: Sequence[tuple[FoliageTree, FilterCert]],
    *,
    depth: int = 1,
    probe: int = 2,
    workers: int = 4,
    search_bound: int = 10_000,
) -> PipelineTree:
    """Shift the certificates of `components`, rescale each tree by its alpha, take the product.

    Each certificate is used both as the family to shift and as the refining
    certificate of its coordinate.
    """
    if len(components) < 2:
        raise LambdaTooSmall(f"A pipeline needs at least 2 components, got {len(components)}")
    trees = [tree for tree, _ in components]
    certs = [cert for _, cert in components]

    logger.info("Shifting %d certificates", len(certs))
    shift = shift_filters(certs, certs[1:], search_bound)
    alphas = shift.alphas()

    logger.info("Rescaling %d components", len(trees))
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        rescaled = list(
            executor.map(
                lambda pair: rescale_tree(pair[0], pair[1], depth=depth, probe=probe),
                zip(trees, alphas, strict=True),
            )
        )

    logger.info("Building the product of %d rescaled components", len(rescaled))
    return PipelineTree(shift, trees, certs, rescaled)
