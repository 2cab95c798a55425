"""Grafts and hybrids: the finite calculus and its lazy counterpart on foliage trees."""

from .finite import (
    FiniteGraft,
    FiniteInstance,
    check_consistent,
    consistency_violations,
    hybr,
    hybr_oracle,
    is_graft,
    random_instance,
    supp,
    truncated_skeleton,
)
from .lazy import (
    GraftFamily,
    HybridFoliageTree,
    HybridTree,
    LazyGraft,
    LossFamily,
    fhybr,
    graft_label,
    host_label,
)
from .shoots import ShootPreservation, SplitGraft, preserves_shoots

__all__ = [
    "FiniteGraft",
    "FiniteInstance",
    "check_consistent",
    "consistency_violations",
    "hybr",
    "hybr_oracle",
    "is_graft",
    "random_instance",
    "supp",
    "truncated_skeleton",
    "GraftFamily",
    "HybridFoliageTree",
    "HybridTree",
    "LazyGraft",
    "LossFamily",
    "fhybr",
    "graft_label",
    "host_label",
    "ShootPreservation",
    "SplitGraft",
    "preserves_shoots",
]
