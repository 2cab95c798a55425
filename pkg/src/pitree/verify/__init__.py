"""Invariant suites, condition checks, fault injection and reports."""

from .conditions import (
    check_cocountable,
    check_filter_shift,
    check_index_identity,
    check_odd_tail,
    check_odd_transfer,
    check_rescale_heights,
    check_rise_transfer,
)
from .faults import FaultKind, FaultyTree, inject_fault
from .report import CheckEntry, CheckStatus, ExitCode, Report, merge
from .samples import Sample, default_point, generate_samples
from .suites import (
    TailPromise,
    baire_foliage_suite,
    expected_tail,
    fip_check,
    grows_into_suite,
    hybrid_oracle_suite,
    theorem2_suite,
)

__all__ = [
    # Conditions
    "check_cocountable",
    "check_filter_shift",
    "check_index_identity",
    "check_odd_tail",
    "check_odd_transfer",
    "check_rescale_heights",
    "check_rise_transfer",
    # Faults
    "FaultKind",
    "FaultyTree",
    "inject_fault",
    # Reports
    "CheckEntry",
    "CheckStatus",
    "ExitCode",
    "Report",
    "merge",
    # Samples
    "Sample",
    "default_point",
    "generate_samples",
    # Suites
    "TailPromise",
    "baire_foliage_suite",
    "expected_tail",
    "fip_check",
    "grows_into_suite",
    "hybrid_oracle_suite",
    "theorem2_suite",
]
