"""Exact symbolic algebra of clopen leaves."""

from .boxes import IndexedBoxes, TupleBlocks, box_difference_decomposition
from .decide import Decision, equal, is_disjoint, is_empty, is_subset, make_union, member
from .forms import Form, normalize, to_clopen
from .indices import IndexSet, cantor_pair, cantor_unpair, tuple_code, tuple_decode
from .serialize import dumps, from_json, point_from_json, point_to_json, to_json
from .sets import (
    BAIRE,
    EMPTY_SET,
    SORG_LINE,
    Box,
    ClopenSet,
    Cyl,
    Diff,
    Empty,
    FinUnion,
    IndexedPartition,
    Minus,
    Points,
    SonUnion,
    SorgIv,
    TailCyl,
    tail_cyl,
    union_of,
)

__all__ = [
    # Sets
    "BAIRE",
    "EMPTY_SET",
    "SORG_LINE",
    "Box",
    "ClopenSet",
    "Cyl",
    "Diff",
    "Empty",
    "FinUnion",
    "IndexedPartition",
    "Minus",
    "Points",
    "SonUnion",
    "SorgIv",
    "TailCyl",
    "tail_cyl",
    "union_of",
    # Decisions
    "Decision",
    "equal",
    "is_disjoint",
    "is_empty",
    "is_subset",
    "make_union",
    "member",
    # Normal forms
    "Form",
    "normalize",
    "to_clopen",
    # Index coding
    "IndexSet",
    "IndexedBoxes",
    "TupleBlocks",
    "box_difference_decomposition",
    "cantor_pair",
    "cantor_unpair",
    "tuple_code",
    "tuple_decode",
    # Serialization
    "dumps",
    "from_json",
    "point_from_json",
    "point_to_json",
    "to_json",
]
