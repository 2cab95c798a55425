"""Tests for canonical relabeling, scope, shoots and rise sets."""

from fractions import Fraction

import pytest

from pitree.constructions import cocountable_tree, sorgenfrey_tree, standard_tree
from pitree.constructions.standard import CylinderSons
from pitree.core import (
    CanonicalTree,
    LabeledTree,
    RiseSet,
    SonFamily,
    canonicalize,
    format_path,
    is_below,
    rise,
    scope,
    shoot_refines,
)
from pitree.errors import ConfigError, NotOmegaBranching, PointOutsideRoot, SpaceMismatch
from pitree.points import BairePoint, SorgPoint
from pitree.symsets import BAIRE, SORG_LINE, ClopenSet, Cyl, Decision, SorgIv

ZERO = BairePoint((), 0)


class TestPaths:
    """Tests for skeleton arithmetic."""

    def test_format_path(self) -> None:
        """Test path formatting."""
        assert format_path(()) == "<>"
        assert format_path((3, 0)) == "<3,0>"

    def test_is_below(self) -> None:
        """Test the strict prefix order."""
        assert is_below((), (1,))
        assert is_below((1,), (1, 2))
        assert not is_below((1, 2), (1, 2))
        assert not is_below((2,), (1, 2))


class TestScope:
    """Tests for scope."""

    def test_standard_scope_follows_the_point(self) -> None:
        """Test that the scope of a Baire point is its sequence of restrictions."""
        p = BairePoint((2, 1), 0)
        assert scope(standard_tree(), p, 4) == [(), (2,), (2, 1), (2, 1, 0)]

    def test_sorgenfrey_scope(self) -> None:
        """Test that 0 sits in [0, 1), then in the first dyadic son each time."""
        tree = sorgenfrey_tree()
        nodes = scope(tree, SorgPoint(Fraction(0)), 4)
        assert nodes == [(), (0,), (0, 0), (0, 0, 0)]
        assert tree.leaf((0, 0, 0)) == SorgIv(Fraction(0), Fraction(1, 4))

    def test_wrong_space(self) -> None:
        """Test that a Sorgenfrey point has no scope in the standard tree."""
        with pytest.raises(SpaceMismatch):
            scope(standard_tree(), SorgPoint(Fraction(0)), 3)

    def test_point_outside_root(self) -> None:
        """Test that removed points have no scope."""
        with pytest.raises(PointOutsideRoot):
            scope(cocountable_tree(standard_tree(), [ZERO]), ZERO, 3)

    def test_depth_zero_is_empty(self) -> None:
        """Test that no node lies below height 0."""
        assert scope(standard_tree(), ZERO, 0) == []

    def test_negative_depth(self) -> None:
        """Test that a negative depth is rejected."""
        with pytest.raises(ConfigError):
            scope(standard_tree(), ZERO, -1)


class TestShoots:
    """Tests for shoot refinement."""

    def test_standard_shoot(self) -> None:
        """Test that only nodes inside the target have a shoot in it."""
        tree = standard_tree()
        assert shoot_refines(tree, (0,), Cyl((0,))).decision == Decision.YES
        assert shoot_refines(tree, (0,), Cyl((0, 0))).decision == Decision.NO

    def test_sorgenfrey_shoot_start(self) -> None:
        """Test that sons of [0, 1) enter [1/2, 1) from son 1 on."""
        outcome = shoot_refines(sorgenfrey_tree(), (0,), SorgIv(Fraction(1, 2), Fraction(1)))
        assert outcome.decision == Decision.YES
        assert outcome.start == 1


class TestRise:
    """Tests for truncated rise sets."""

    @pytest.mark.parametrize("n", range(8))
    def test_standard_rise_of_cylinders(self, n: int) -> None:
        """Test that the rise of constant 0 in its n-th cylinder is [n, 8)."""
        rise_set = rise(standard_tree(), ZERO, Cyl(ZERO.restrict(n)), 8)
        assert rise_set.known == frozenset(range(n, 8))
        assert rise_set.undecided == frozenset()
        assert rise_set.tail_start() == n

    def test_standard_rise_example(self) -> None:
        """Test the rise of constant 0 in S<0,0> to depth 6."""
        assert rise(standard_tree(), ZERO, Cyl((0, 0)), 6).sorted() == [2, 3, 4, 5]

    def test_whole_space(self) -> None:
        """Test that the whole space rises at every height."""
        assert rise(standard_tree(), ZERO, BAIRE, 6).sorted() == [0, 1, 2, 3, 4, 5]
        sorg = rise(sorgenfrey_tree(), SorgPoint(Fraction(1, 3)), SORG_LINE, 5)
        assert sorg.sorted() == [0, 1, 2, 3, 4]

    def test_depth_zero(self) -> None:
        """Test that a rise truncated at depth 0 knows no heights."""
        rise_set = rise(standard_tree(), ZERO, BAIRE, 0)
        assert rise_set.known == frozenset()
        assert rise_set.undecided == frozenset()
        assert rise_set.tail_start() is None

    def test_sorgenfrey_rise_is_a_tail(self) -> None:
        """Test that 0 rises in [0, 1/8) once its leaf is inside it."""
        target = SorgIv(Fraction(0), Fraction(1, 8))
        rise_set = rise(sorgenfrey_tree(), SorgPoint(Fraction(0)), target, 8)
        assert rise_set.sorted() == [4, 5, 6, 7]
        assert rise_set.tail_start() == 4


class TestRiseSet:
    """Tests for RiseSet helpers."""

    def test_contains(self) -> None:
        """Test three-valued membership."""
        rise_set = RiseSet(frozenset({2, 3}), 5, frozenset({4}))
        assert rise_set.contains(2) is True
        assert rise_set.contains(1) is False
        assert rise_set.contains(4) is None
        assert rise_set.contains(5) is None

    def test_tail_start(self) -> None:
        """Test the start of the known tail."""
        assert RiseSet(frozenset({1, 3, 4}), 5).tail_start() == 3
        assert RiseSet(frozenset({1, 2}), 5).tail_start() is None

    def test_intersection(self) -> None:
        """Test intersection of truncated sets."""
        a = RiseSet(frozenset({1, 2, 3}), 4)
        b = RiseSet(frozenset({2, 3, 5}), 6, frozenset({4}))
        common = a.intersection(b)
        assert common.known == frozenset({2, 3})
        assert common.depth == 4
        assert common.undecided == frozenset({4})


class WordTree(LabeledTree[str]):
    """Baire cylinders labeled by words such as "r.2.0"."""

    space = "baire"
    description = "words"

    def __init__(self, width: int | None = None):
        self.width = width

    @property
    def root_label(self) -> str:
        return "r"

    def _path(self, label: str) -> tuple[int, ...]:
        return tuple(int(x) for x in label.split(".")[1:])

    def leaf_of(self, label: str) -> ClopenSet:
        return Cyl(self._path(label))

    def family_of(self, label: str) -> SonFamily:
        family = CylinderSons(self._path(label))
        if self.width is not None:
            family.size = self.width
        return family

    def son_label(self, label: str, i: int) -> str:
        return f"{label}.{i}"


class TestCanonicalize:
    """Tests for relabeling onto canonical paths."""

    def test_foliage_tree_is_unchanged(self) -> None:
        """Test that canonical trees pass through."""
        tree = standard_tree()
        assert canonicalize(tree, 3) is tree

    def test_relabels_in_son_order(self) -> None:
        """Test that son i of a label becomes path + <i>."""
        tree = canonicalize(WordTree(), 3)
        assert isinstance(tree, CanonicalTree)
        assert tree.label_of((2, 0)) == "r.2.0"
        assert tree.leaf((2, 0)) == Cyl((2, 0))
        assert scope(tree, BairePoint((1,), 0), 3) == [(), (1,), (1, 0)]

    def test_finite_branching_is_refused(self) -> None:
        """Test that finitely branching labeled trees are rejected."""
        with pytest.raises(NotOmegaBranching, match="only 2 sons"):
            canonicalize(WordTree(width=2), 3)
