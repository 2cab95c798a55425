"""Tree builders: standard, Sorgenfrey, product, rescale, co-countable and the pipeline."""

from .alpha import Alpha, affine, identity, table
from .cocountable import CocountableGrafts, FlattenedGraft, cocountable_tree
from .pipeline import PipelineTree, pipeline_tree
from .product import IndexFamily, ProductTree, build_index_family, product_tree
from .rescale import RescaleGraft, RescaleGrafts, rescale_tree
from .shift import (
    FilterCert,
    OmegaSet,
    ShiftResult,
    cofinite,
    cofinite_upto,
    progression,
    shift_filters,
)
from .sorgenfrey import SorgenfreyTree, sorgenfrey_tree
from .standard import StandardTree, standard_tree

__all__ = [
    "Alpha",
    "affine",
    "identity",
    "table",
    "CocountableGrafts",
    "FlattenedGraft",
    "cocountable_tree",
    "PipelineTree",
    "pipeline_tree",
    "IndexFamily",
    "ProductTree",
    "build_index_family",
    "product_tree",
    "RescaleGraft",
    "RescaleGrafts",
    "rescale_tree",
    "FilterCert",
    "OmegaSet",
    "ShiftResult",
    "cofinite",
    "cofinite_upto",
    "progression",
    "shift_filters",
    "SorgenfreyTree",
    "sorgenfrey_tree",
    "StandardTree",
    "standard_tree",
]
