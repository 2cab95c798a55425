"""Normal forms for clopen sets and their boolean operations.

A factor set (Baire space or the Sorgenfrey line) is held as

* a regular base: a trie of cylinders, or a list of half-open intervals;
* finitely many exceptional points whose membership is flipped against the base;
* combs: unions of a son family's leaves over an infinite index set.

Product sets are finite lists of pairwise disjoint boxes of factor forms.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..errors import OutsideAlgebra, OverlapError, SpaceMismatch
from ..points import BairePoint, Point, ProductPoint, SorgPoint, point_key, space_of
from . import intervals as iv
from . import tries
from .indices import IndexSet, runs
from .sets import (
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

logger = logging.getLogger(__name__)

Base = tries.Trie | iv.Intervals


@dataclass(frozen=True)
class Comb:
    """Leaves of `family` over `indices`."""

    family: IndexedPartition
    indices: IndexSet


@dataclass(frozen=True)
class FactorForm:
    space: str
    base: Base
    flips: tuple[Point, ...] = ()
    combs: tuple[Comb, ...] = ()

    @property
    def regular(self) -> "FactorForm":
        return FactorForm(self.space, self.base, self.flips)

    @property
    def is_empty(self) -> bool:
        return self.base == _empty_base(self.space) and not self.flips and not self.combs

    @property
    def is_full(self) -> bool:
        return self.base == _full_base(self.space) and not self.flips and not self.combs


BoxForm = tuple[tuple[int, FactorForm], ...]


@dataclass(frozen=True)
class ProductForm:
    boxes: tuple[BoxForm, ...]


@dataclass(frozen=True)
class NoForm:
    """Normal form of the empty set, compatible with every space."""


NO_FORM = NoForm()

Form = FactorForm | ProductForm | NoForm


def _empty_base(space: str) -> Base:
    return tries.EMPTY if space == "baire" else iv.NOTHING


def _full_base(space: str) -> Base:
    return tries.FULL if space == "baire" else iv.WHOLE


def empty_factor(space: str) -> FactorForm:
    return FactorForm(space, _empty_base(space))


def full_factor(space: str) -> FactorForm:
    return FactorForm(space, _full_base(space))


def _check_point(space: str, p: Point) -> None:
    if space_of(p) != space:
        raise SpaceMismatch(f"{space_of(p)} point used with a {space} set")


def _base_member(space: str, base: Base, p: Point) -> bool:
    _check_point(space, p)
    if isinstance(p, BairePoint):
        assert isinstance(base, tries.Leaf | tries.Split)
        return tries.member(base, p.at)
    assert isinstance(p, SorgPoint) and isinstance(base, tuple)
    return iv.contains(base, p.value)


def _base_combine(space: str, a: Base, b: Base, op: str) -> Base:
    if space == "baire":
        assert isinstance(a, tries.Leaf | tries.Split) and isinstance(b, tries.Leaf | tries.Split)
        return tries.combine(a, b, op)
    assert isinstance(a, tuple) and isinstance(b, tuple)
    return iv.combine(a, b, op)


def _regular_member(f: FactorForm, p: Point) -> bool:
    return _base_member(f.space, f.base, p) != (p in f.flips)


def _apply(op: str, x: bool, y: bool) -> bool:
    if op == "and":
        return x and y
    if op == "or":
        return x or y
    return x and not y


@lru_cache(maxsize=1 << 18)
def _combine_regular(a: FactorForm, b: FactorForm, op: str) -> FactorForm:
    if a.space != b.space:
        raise SpaceMismatch(f"Cannot combine {a.space} and {b.space} sets")
    base = _base_combine(a.space, a.base, b.base, op)
    flips = []
    for p in set(a.flips) | set(b.flips):
        wanted = _apply(op, _regular_member(a, p), _regular_member(b, p))
        if wanted != _base_member(a.space, base, p):
            flips.append(p)
    return FactorForm(a.space, base, tuple(sorted(flips, key=point_key)))


def _regular_form(s: ClopenSet, space: str) -> FactorForm:
    form = normalize(s)
    if isinstance(form, NoForm):
        return empty_factor(space)
    if not isinstance(form, FactorForm):
        raise SpaceMismatch("Expected a factor set")
    if form.combs:
        raise OutsideAlgebra("Son leaves are not regular sets")
    if form.space != space:
        raise SpaceMismatch(f"Expected a {space} set, got {form.space}")
    return form


def _span(family: IndexedPartition, lo: int, hi: int) -> FactorForm:
    return _regular_form(Diff(family.residual(lo), family.residual(hi)), family.space)


def _uniform_status(
    family: IndexedPartition, reps: tuple[int, ...], low: FactorForm
) -> bool:
    statuses = set()
    for rep in reps:
        leaf = _regular_form(family.leaf_at(rep), family.space)
        if _combine_regular(leaf, low, "sub").is_empty:
            statuses.add(True)
        elif _combine_regular(leaf, low, "and").is_empty:
            statuses.add(False)
        else:
            raise OutsideAlgebra(f"Tail leaves of {family.key} are not uniform")
    if len(statuses) != 1:
        raise OutsideAlgebra(f"Tails of {family.key} disagree")
    return statuses.pop()


def _split_combs(
    side: FactorForm, horizons: dict[object, tuple[int, tuple[int, ...]]]
) -> tuple[FactorForm, dict[object, IndexSet]]:
    low = side.regular
    high: dict[object, IndexSet] = {}
    for comb in side.combs:
        key = comb.family.key
        start = horizons[key][0]
        for lo, hi in runs(comb.indices.members_below(start)):
            low = _combine_regular(low, _span(comb.family, lo, hi), "or")
        part = comb.indices.intersection(IndexSet.tail(start, comb.indices.arity))
        high[key] = high[key].union(part) if key in high else part
    return low, high


def _combine_factor(a: FactorForm, b: FactorForm, op: str) -> FactorForm:
    if a.space != b.space:
        raise SpaceMismatch(f"Cannot combine {a.space} and {b.space} sets")
    if not a.combs and not b.combs:
        return _combine_regular(a, b, op)
    space = a.space
    families: dict[object, IndexedPartition] = {}
    arities: dict[object, int] = {}
    for comb in a.combs + b.combs:
        key = comb.family.key
        families.setdefault(key, comb.family)
        if arities.setdefault(key, comb.indices.arity) != comb.indices.arity:
            raise OutsideAlgebra(f"Mixed index arities for {key}")
        if comb.family.space != space:
            raise SpaceMismatch("Son family lives in another space")
    keys = sorted(families, key=repr)
    parents = {k: _regular_form(families[k].residual(0), space) for k in keys}
    horizons: dict[object, tuple[int, tuple[int, ...]]] = {}
    for k in keys:
        others = [parents[o] for o in keys if o != k]
        found = families[k].horizon([a.regular, b.regular, *others])
        if found is None:
            raise OutsideAlgebra(f"No horizon for son family {k}")
        horizons[k] = found
    tails = {k: _regular_form(families[k].residual(horizons[k][0]), space) for k in keys}
    for i, k1 in enumerate(keys):
        for k2 in keys[i + 1 :]:
            if not _combine_regular(tails[k1], tails[k2], "and").is_empty:
                raise OutsideAlgebra("Overlapping son-family tails")

    low_a, high_a = _split_combs(a, horizons)
    low_b, high_b = _split_combs(b, horizons)
    result = _combine_regular(low_a, low_b, op)
    pending: list[tuple[object, IndexSet]] = []
    for k in keys:
        family = families[k]
        start, reps = horizons[k]
        tail = IndexSet.tail(start, arities[k])
        ia = high_a.get(k, IndexSet.nothing(arities[k]))
        if _uniform_status(family, reps, low_a):
            ia = ia.union(tail)
        ib = high_b.get(k, IndexSet.nothing(arities[k]))
        if _uniform_status(family, reps, low_b):
            ib = ib.union(tail)
        result = _combine_regular(result, tails[k], "sub")
        pending.append((k, ia.combine(ib, op).intersection(tail)))

    combs: list[Comb] = []
    for k, indices in pending:
        family = families[k]
        if indices.is_empty:
            continue
        if indices.equals_tail(horizons[k][0]):
            result = _combine_regular(result, tails[k], "or")
        elif indices.is_finite:
            for lo, hi in runs(indices.codes()):
                result = _combine_regular(result, _span(family, lo, hi), "or")
        else:
            combs.append(Comb(family, indices))
    return FactorForm(space, result.base, result.flips, tuple(combs))


def _clean_box(coords: dict[int, FactorForm]) -> BoxForm:
    return tuple(sorted((c, f) for c, f in coords.items() if not f.is_full))


def _factor_op(a: FactorForm, b: FactorForm, op: str) -> FactorForm | None:
    out = _combine_factor(a, b, op)
    return None if out.is_empty else out


def _box_meet(b1: BoxForm, b2: BoxForm) -> BoxForm | None:
    coords = dict(b1)
    for c, f in b2:
        if c in coords:
            met = _factor_op(coords[c], f, "and")
            if met is None:
                return None
            coords[c] = met
        else:
            coords[c] = f
    return _clean_box(coords)


def _box_minus(b1: BoxForm, b2: BoxForm) -> list[BoxForm]:
    if b1 == b2:
        return []
    if _box_meet(b1, b2) is None:
        return [b1]
    pieces: list[BoxForm] = []
    current = dict(b1)
    for c, f in b2:
        own = current.get(c, full_factor(f.space))
        outside = _factor_op(own, f, "sub")
        if outside is not None:
            piece = dict(current)
            piece[c] = outside
            pieces.append(_clean_box(piece))
        inside = _factor_op(own, f, "and")
        if inside is None:
            break
        current[c] = inside
    return pieces


def _product_combine(a: ProductForm, b: ProductForm, op: str) -> Form:
    boxes: list[BoxForm] = []
    if op == "and":
        for x in a.boxes:
            for y in b.boxes:
                met = _box_meet(x, y)
                if met is not None:
                    boxes.append(met)
    elif op == "sub":
        for x in a.boxes:
            pieces = [x]
            for y in b.boxes:
                pieces = [p for piece in pieces for p in _box_minus(piece, y)]
            boxes.extend(pieces)
    else:
        boxes.extend(a.boxes)
        rest = _product_combine(b, a, "sub")
        if isinstance(rest, ProductForm):
            boxes.extend(rest.boxes)
    return ProductForm(tuple(boxes)) if boxes else NO_FORM


def combine(a: Form, b: Form, op: str) -> Form:
    """Boolean combination ("and", "or", "sub") of two normal forms."""
    if isinstance(a, NoForm):
        return b if op == "or" else NO_FORM
    if isinstance(b, NoForm):
        return NO_FORM if op == "and" else a
    if a == b:
        return NO_FORM if op == "sub" else a
    if isinstance(a, FactorForm) and isinstance(b, FactorForm):
        out = _combine_factor(a, b, op)
        return NO_FORM if out.is_empty else out
    if isinstance(a, ProductForm) and isinstance(b, ProductForm):
        return _product_combine(a, b, op)
    raise SpaceMismatch("Cannot combine a product set with a factor set")


def _from_points(pts: tuple[Point, ...]) -> Form:
    if not pts:
        return NO_FORM
    spaces = {space_of(p) for p in pts}
    if len(spaces) != 1:
        raise SpaceMismatch("Mixed point spaces")
    space = spaces.pop()
    if space == "product":
        raise OutsideAlgebra("Finite sets of product points are not finitely supported")
    return FactorForm(space, _empty_base(space), pts)


@lru_cache(maxsize=1 << 18)
def normalize(s: ClopenSet) -> Form:
    """Normal form of a symbolic set."""
    if isinstance(s, Empty):
        return NO_FORM
    if isinstance(s, Cyl):
        return FactorForm("baire", tries.cylinder(s.path))
    if isinstance(s, TailCyl):
        return FactorForm("baire", tries.cylinder(s.path, tries.at_least(s.m)))
    if isinstance(s, SorgIv):
        return FactorForm("sorg", iv.interval(s.lo, s.hi))
    if isinstance(s, Points):
        return _from_points(s.points)
    if isinstance(s, Minus):
        return combine(normalize(s.base), _from_points(s.points), "sub")
    if isinstance(s, Diff):
        return combine(normalize(s.base), normalize(s.removed), "sub")
    if isinstance(s, FinUnion):
        acc: Form = NO_FORM
        for member in s.members:
            form = normalize(member)
            if not isinstance(combine(acc, form, "and"), NoForm):
                raise OverlapError(f"Union members overlap: {member}")
            acc = combine(acc, form, "or")
        return acc
    if isinstance(s, Box):
        coords: dict[int, FactorForm] = {}
        for c, part in s.support:
            form = normalize(part)
            if isinstance(form, NoForm):
                return NO_FORM
            if isinstance(form, ProductForm):
                raise SpaceMismatch("Box coordinates must be factor sets")
            coords[c] = form
        return ProductForm((_clean_box(coords),))
    if isinstance(s, SonUnion):
        if s.indices.is_empty:
            return NO_FORM
        if s.indices.is_everything:
            return normalize(s.family.residual(0))
        if s.indices.is_finite:
            acc = NO_FORM
            for lo, hi in runs(s.indices.codes()):
                acc = combine(acc, _span(s.family, lo, hi), "or")
            return acc
        return FactorForm(
            s.family.space, _empty_base(s.family.space), (), (Comb(s.family, s.indices),)
        )
    raise TypeError(f"Not a clopen set: {s!r}")


def form_member(form: Form, p: Point) -> bool:
    if isinstance(form, NoForm):
        return False
    if isinstance(form, ProductForm):
        if not isinstance(p, ProductPoint):
            raise SpaceMismatch("Product set queried with a factor point")
        return any(all(form_member(f, p.coordinate(c)) for c, f in box) for box in form.boxes)
    if _regular_member(form, p):
        return True
    for comb in form.combs:
        index = comb.family.index_of(p)
        if index is not None and comb.indices.contains(index):
            return True
    return False


def is_empty_form(form: Form) -> bool:
    return isinstance(form, NoForm)


def has_combs(form: Form) -> bool:
    """Whether some factor of `form` carries a union of son leaves."""
    if isinstance(form, FactorForm):
        return bool(form.combs)
    if isinstance(form, ProductForm):
        return any(f.combs for box in form.boxes for _, f in box)
    return False


def leaf_status(leaf: ClopenSet, form: Form) -> bool | None:
    """True if `leaf` lies inside `form`, False if disjoint from it, None if split."""
    own = normalize(leaf)
    if isinstance(combine(own, form, "sub"), NoForm):
        return True
    if isinstance(combine(own, form, "and"), NoForm):
        return False
    return None


def agreeing_reps(family: IndexedPartition, reps: Sequence[int], forms: Sequence[Form]) -> bool:
    """Whether all representative leaves sit the same way against every form."""
    for form in forms:
        statuses = {leaf_status(family.leaf_at(rep), form) for rep in reps}
        if len(statuses) != 1 or None in statuses:
            return False
    return True


# Horizon helpers used by son families


def factor_forms(forms: Sequence[Form], space: str) -> list[FactorForm]:
    return [f for f in forms if isinstance(f, FactorForm) and f.space == space]


def trie_horizon(forms: Sequence[Form], path: tuple[int, ...]) -> int:
    """Least K such that Baire sons path + <c>, c >= K, are each inside or outside every form."""
    horizon = 0
    for f in factor_forms(forms, "baire"):
        assert isinstance(f.base, tries.Leaf | tries.Split)
        horizon = max(horizon, tries.split_horizon(f.base, path))
        for p in f.flips:
            assert isinstance(p, BairePoint)
            if p.restrict(len(path)) == path:
                horizon = max(horizon, p.at(len(path)) + 1)
    return horizon


def sorg_breakpoints(forms: Sequence[Form]) -> list[Fraction]:
    points: set[Fraction] = set()
    for f in factor_forms(forms, "sorg"):
        assert isinstance(f.base, tuple)
        points.update(iv.breakpoints(f.base))
        for p in f.flips:
            assert isinstance(p, SorgPoint)
            points.add(p.value)
    return sorted(points)


def coordinate_forms(forms: Sequence[Form], coordinate: int) -> list[Form]:
    """Factor forms appearing at `coordinate` in the boxes of product forms."""
    out: list[Form] = []
    for form in forms:
        if isinstance(form, ProductForm):
            for box in form.boxes:
                out.extend(f for c, f in box if c == coordinate)
    return out


# Back to symbolic sets


def _trie_sets(node: tries.Trie, path: tuple[int, ...]) -> list[ClopenSet]:
    if isinstance(node, tries.Leaf):
        return [Cyl(path)] if node.value else []
    out: list[ClopenSet] = []
    keys = [k for k, _ in node.children]
    if node.default:
        if keys == list(range(len(keys))):
            out.append(tail_cyl(path, len(keys)))
        else:
            out.append(Diff(Cyl(path), union_of([Cyl((*path, k)) for k in keys])))
    for key, sub in node.children:
        out.extend(_trie_sets(sub, (*path, key)))
    return out


def _factor_set(f: FactorForm) -> ClopenSet:
    if f.space == "baire":
        assert isinstance(f.base, tries.Leaf | tries.Split)
        base = union_of(_trie_sets(f.base, ()))
    else:
        assert isinstance(f.base, tuple)
        base = union_of([SorgIv(lo, hi) for lo, hi in f.base])
    inside = tuple(p for p in f.flips if _base_member(f.space, f.base, p))
    outside = tuple(p for p in f.flips if not _base_member(f.space, f.base, p))
    members: list[ClopenSet] = [Minus(base, inside) if inside else base]
    if outside:
        members.append(Points(outside))
    members.extend(SonUnion(c.family, c.indices) for c in f.combs)
    return union_of(members)


def to_clopen(form: Form) -> ClopenSet:
    """A symbolic set whose normal form is `form`."""
    if isinstance(form, NoForm):
        return Empty()
    if isinstance(form, FactorForm):
        return _factor_set(form)
    return union_of([Box(tuple((c, _factor_set(f)) for c, f in box)) for box in form.boxes])
