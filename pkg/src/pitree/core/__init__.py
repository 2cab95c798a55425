"""Canonical skeleton, lazy foliage trees, scope, shoots and rise."""

from .ops import RiseSet, rise, scope, shoot_refines
from .paths import ROOT, NodePath, format_path, height, is_below
from .tree import (
    CanonicalTree,
    FoliageTree,
    LabeledTree,
    ShootDecision,
    SonFamily,
    canonicalize,
    check_omega_branching,
)

__all__ = [
    "ROOT",
    "NodePath",
    "format_path",
    "height",
    "is_below",
    "CanonicalTree",
    "FoliageTree",
    "LabeledTree",
    "ShootDecision",
    "SonFamily",
    "canonicalize",
    "check_omega_branching",
    "RiseSet",
    "rise",
    "scope",
    "shoot_refines",
]
