"""Lazy pi-trees on Baire, Sorgenfrey and product spaces.

This package provides an exact algebra of symbolic clopen sets, lazily
materialized Baire foliage trees with their scope and rise sets, the
standard, Sorgenfrey, product, rescaled, co-countable and pipeline
constructions, the grafting calculus, and suites that verify the
foliage and grows-into invariants to a finite depth.
"""

from pitree.config import PitreeConfig
from pitree.core import FoliageTree, RiseSet, rise, scope
from pitree.errors import ConfigError, PitreeError
from pitree.terms import build_tree, load_tree
from pitree.verify import Report, baire_foliage_suite, grows_into_suite

__version__ = "0.1.0"

__all__ = [
    # Config
    "PitreeConfig",
    # Trees
    "FoliageTree",
    "RiseSet",
    "rise",
    "scope",
    "build_tree",
    "load_tree",
    # Verification
    "Report",
    "baire_foliage_suite",
    "grows_into_suite",
    # Errors
    "ConfigError",
    "PitreeError",
]
