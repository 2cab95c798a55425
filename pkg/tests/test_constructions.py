"""Tests for the tree constructions."""

from fractions import Fraction

import pytest

from pitree.constructions import (
    CocountableGrafts,
    PipelineTree,
    ProductTree,
    RescaleGrafts,
    affine,
    cocountable_tree,
    cofinite,
    cofinite_upto,
    identity,
    pipeline_tree,
    product_tree,
    progression,
    rescale_tree,
    shift_filters,
    sorgenfrey_tree,
    standard_tree,
    table,
)
from pitree.constructions.shift import Cofinite, FilterCert, FiniteSet
from pitree.constructions.sorgenfrey import zigzag, zigzag_index
from pitree.errors import (
    AlphaNotIncreasing,
    ComponentNotVerified,
    ConfigError,
    DuplicatePoint,
    FIPViolation,
    LambdaTooSmall,
    NotRefining,
    PointOutsideRoot,
)
from pitree.hybrid import HybridFoliageTree, host_label
from pitree.points import BairePoint, ProductPoint, SorgPoint
from pitree.symsets import (
    BAIRE,
    SORG_LINE,
    Box,
    Cyl,
    Decision,
    Minus,
    SorgIv,
    TailCyl,
    equal,
    member,
    union_of,
)
from pitree.verify import FaultKind, inject_fault

ZERO = BairePoint((), 0)


class TestStandardTree:
    """Tests for the standard tree of Baire space."""

    def test_leaves_are_cylinders(self) -> None:
        """Test that the leaf at a path is its cylinder."""
        tree = standard_tree()
        assert tree.root_leaf == BAIRE
        assert tree.leaf((1, 2)) == Cyl((1, 2))
        assert tree.sons_of((1,)).residual(3) == TailCyl((1,), 3)

    def test_index_of(self) -> None:
        """Test son lookup."""
        sons = standard_tree().sons_of((1,))
        assert sons.index_of(BairePoint((1, 4), 0)) == 4
        assert sons.index_of(BairePoint((2, 4), 0)) is None

    def test_separation(self) -> None:
        """Test that separations halve with height."""
        tree = standard_tree()
        assert tree.separation((0, 0)) == Fraction(1, 4)
        assert tree.separation_bound(2) == Fraction(1, 4)


class TestSorgenfreyTree:
    """Tests for the Sorgenfrey tree."""

    def test_zigzag(self) -> None:
        """Test the integer enumeration of the root's sons."""
        assert [zigzag(n) for n in range(5)] == [0, 1, -1, 2, -2]
        assert all(zigzag_index(zigzag(n)) == n for n in range(40))

    def test_root_sons_partition_the_line(self) -> None:
        """Test that three unit intervals and the residual make up the line."""
        sons = sorgenfrey_tree().sons_of(())
        assert sons.leaf_at(2) == SorgIv(Fraction(-1), Fraction(0))
        assert sons.residual(0) == SORG_LINE
        parts = union_of([*(sons.leaf_at(i) for i in range(3)), sons.residual(3)])
        assert equal(parts, SORG_LINE) == Decision.YES

    def test_dyadic_sons_accumulate_at_the_right_end(self) -> None:
        """Test the sons of [0, 1)."""
        tree = sorgenfrey_tree()
        sons = tree.sons_of((0,))
        assert sons.leaf_at(0) == SorgIv(Fraction(0), Fraction(1, 2))
        assert sons.leaf_at(2) == SorgIv(Fraction(3, 4), Fraction(7, 8))
        assert sons.residual(2) == SorgIv(Fraction(3, 4), Fraction(1))
        assert sons.index_of(SorgPoint(Fraction(3, 4))) == 2
        assert sons.index_of(SorgPoint(Fraction(1))) is None

    def test_separation(self) -> None:
        """Test widths against the promised bounds."""
        tree = sorgenfrey_tree()
        assert tree.separation(()) is None
        assert tree.separation_bound(0) is None
        assert tree.separation((0, 0, 0)) == Fraction(1, 4)
        assert tree.separation_bound(3) == Fraction(1, 4)


class TestProductTree:
    """Tests for product trees."""

    def test_too_few_coordinates(self) -> None:
        """Test that products need two coordinates."""
        with pytest.raises(LambdaTooSmall):
            product_tree(1, [standard_tree()])

    def test_component_count(self) -> None:
        """Test that finite products take one tree per coordinate."""
        with pytest.raises(ConfigError, match="Expected 3"):
            product_tree(3, [standard_tree(), standard_tree()])

    def test_unverified_component(self) -> None:
        """Test that raw (e.g. corrupted) components are refused."""
        faulty = inject_fault(standard_tree(), FaultKind.OVERLAP, 0)
        with pytest.raises(ComponentNotVerified):
            product_tree(2, [faulty, standard_tree()])

    def test_root_and_first_sons(self) -> None:
        """Test the root box and the box differences below it."""
        tree = product_tree(2, [standard_tree(), sorgenfrey_tree()])
        assert isinstance(tree, ProductTree)
        assert tree.root_leaf == Box((), 2)
        p = ProductPoint((BairePoint((3,), 0),), SorgPoint(Fraction(1, 3)))
        assert tree.sons_of(()).index_of(p) == 3
        assert member(p, tree.sons_of(()).leaf_at(3))
        assert not member(p, tree.sons_of(()).leaf_at(2))

    def test_second_coordinate_enters_at_height_two(self) -> None:
        """Test the index family and the leaf of <0,0>."""
        tree = product_tree(2, [standard_tree(), standard_tree()])
        assert tree.index.assignment((0, 0)) == {0: (0,), 1: (0,)}
        assert tree.index(1, (0, 0), 1) == (0,)
        assert tree.leaf((0, 0)) == Box.of({0: Cyl((0,)), 1: Cyl((0,))}, 2)

    def test_omega_product_cycles_components(self) -> None:
        """Test that omega products reuse the component list."""
        tree = product_tree(None, [standard_tree(), sorgenfrey_tree()])
        assert tree.lam is None
        assert tree.component(4).space == "baire"
        assert tree.component(5).space == "sorg"
        assert tree.index.active(3) == [0, 1, 2, 3]

    def test_scope_is_unique(self) -> None:
        """Test that a product point has one son at every probed level."""
        tree = product_tree(2, [standard_tree(), sorgenfrey_tree()])
        p = ProductPoint((BairePoint((1, 0), 2),), SorgPoint(Fraction(-1, 2)))
        path: tuple[int, ...] = ()
        for _ in range(5):
            sons = tree.sons_of(path)
            index = sons.index_of(p)
            assert index is not None
            assert member(p, sons.leaf_at(index))
            path = (*path, index)


class TestAlpha:
    """Tests for rescaling maps."""

    def test_affine(self) -> None:
        """Test the map 2n+1."""
        alpha = affine(2, 1)
        assert [alpha(n) for n in range(-1, 4)] == [-1, 1, 3, 5, 7]
        assert alpha.gap(0) == 2
        assert alpha.floor_height(6) == 3

    def test_identity(self) -> None:
        """Test the identity map."""
        alpha = identity()
        assert alpha(5) == 5
        assert alpha.gap(3) == 1
        assert alpha.floor_height(4) == 4

    def test_table(self) -> None:
        """Test listed values followed by a fixed step."""
        alpha = table([0, 2, 5], 2)
        assert [alpha(n) for n in range(5)] == [0, 2, 5, 7, 9]

    def test_not_increasing(self) -> None:
        """Test rejection of maps that are not strictly increasing."""
        with pytest.raises(AlphaNotIncreasing):
            affine(0, 1)
        with pytest.raises(AlphaNotIncreasing):
            table([0, 0], 1)
        with pytest.raises(AlphaNotIncreasing):
            table([1], 0)


class TestFilterShift:
    """Tests for shifting filter certificates."""

    def test_cofinite_shift(self) -> None:
        """Test that cofinite certificates shift to 2n+1 and 2n+3."""
        result = shift_filters([cofinite(), cofinite()], [cofinite()])
        assert [result.h(k) for k in range(4)] == [1, 3, 5, 7]
        assert [result.alpha(0)(x) for x in range(4)] == [1, 3, 5, 7]
        assert [result.alpha(1)(x) for x in range(4)] == [3, 5, 7, 9]
        assert result.image(0, Cofinite(frozenset()), 10) == {1, 3, 5, 7, 9}

    def test_progression_shift(self) -> None:
        """Test a coordinate certified by multiples of 3."""
        result = shift_filters([cofinite_upto(8), progression(3)], [progression(3)])
        assert result.support(1, 4) == [0, 3, 6, 9]
        assert [result.h(k) for k in range(4)] == [1, 3, 7, 11]
        assert result.alpha(1)(3) == 7

    def test_errors(self) -> None:
        """Test the failure modes of a shift."""
        with pytest.raises(LambdaTooSmall):
            shift_filters([cofinite()], [])
        with pytest.raises(ConfigError, match="gamma"):
            shift_filters([cofinite(), cofinite()], [])
        finite = FilterCert("finite", (FiniteSet(frozenset({1})),))
        with pytest.raises(FIPViolation):
            shift_filters([finite, cofinite()], [cofinite()])
        with pytest.raises(NotRefining):
            shift_filters([cofinite(), progression(2)], [progression(3)])

    def test_listed_certificate_repeats_its_last_member(self) -> None:
        """Test that member(i) is total on listed certificates."""
        cert = cofinite_upto(2)
        assert cert.size == 3
        assert cert.member(10) == cert.member(2)
        assert len(cert.prefix(10)) == 3


class TestRescale:
    """Tests for rescaled trees."""

    def test_identity_plants_no_grafts(self) -> None:
        """Test that gaps of 1 leave the host unchanged."""
        tree = rescale_tree(standard_tree(), identity())
        assert isinstance(tree, HybridFoliageTree)
        assert tree.grafts.graft_at(()) is None
        assert tree.leaf((2, 1)) == Cyl((2, 1))

    def test_two_n_plus_one(self) -> None:
        """Test that host nodes of height h land at height 2h."""
        tree = rescale_tree(standard_tree(), affine(2, 1))
        grafts = tree.grafts
        assert isinstance(grafts, RescaleGrafts)
        assert grafts.k(()) == 2
        assert grafts.hybrid_height((3,)) == 2
        assert grafts.hybrid_height((3, 1)) == 4
        # son 3 of the root is coded by the pair (2, 0)
        assert tree.locate((3,)) == (2, 0)
        assert tree.label_of((2, 0)) == host_label((3,))
        assert tree.leaf((2, 0)) == Cyl((3,))
        assert tree.sons_of(()).size is None


class TestCocountable:
    """Tests for removing finitely many points."""

    def test_no_points_returns_the_tree(self) -> None:
        """Test the empty cut."""
        tree = standard_tree()
        assert cocountable_tree(tree, []) is tree

    def test_root_loses_the_points(self) -> None:
        """Test the root leaf and the cut stages."""
        points = [SorgPoint(Fraction(0)), SorgPoint(Fraction(1, 2))]
        tree = cocountable_tree(sorgenfrey_tree(), points)
        assert isinstance(tree, HybridFoliageTree)
        assert tree.root_leaf == Minus(SORG_LINE, tuple(points))
        grafts = tree.grafts
        assert isinstance(grafts, CocountableGrafts)
        assert grafts.roots[0] == ()
        assert len(grafts.stages) == 2
        for p in points:
            assert not member(p, tree.root_leaf)

    def test_sons_avoid_the_points(self) -> None:
        """Test that no probed son leaf keeps a removed point."""
        tree = cocountable_tree(standard_tree(), [ZERO, BairePoint((1,), 0)])
        for i in range(6):
            leaf = tree.sons_of(()).leaf_at(i)
            assert not member(ZERO, leaf)
            assert not member(BairePoint((1,), 0), leaf)

    def test_invalid_points(self) -> None:
        """Test duplicate, foreign and product points."""
        with pytest.raises(DuplicatePoint):
            cocountable_tree(standard_tree(), [ZERO, ZERO])
        with pytest.raises(PointOutsideRoot):
            cocountable_tree(cocountable_tree(standard_tree(), [ZERO]), [ZERO])
        product = product_tree(2, [standard_tree(), standard_tree()])
        with pytest.raises(ConfigError, match="factor space"):
            cocountable_tree(product, [ProductPoint((), ZERO)])


class TestPipeline:
    """Tests for the shift, rescale and product pipeline."""

    def test_pipeline_of_two_sorgenfrey_trees(self) -> None:
        """Test that the components are rescaled by the shifted maps."""
        tree = pipeline_tree(
            [(sorgenfrey_tree(), cofinite()), (sorgenfrey_tree(), cofinite())], workers=2
        )
        assert isinstance(tree, PipelineTree)
        assert tree.lam == 2
        assert [tree.shift.alpha(0)(x) for x in range(3)] == [1, 3, 5]
        assert all(isinstance(c, HybridFoliageTree) for c in tree.rescaled)
        assert tree.root_leaf == Box((), 2)
        assert "pipeline(" in tree.description

    def test_pipeline_needs_two_components(self) -> None:
        """Test that one component is refused."""
        with pytest.raises(LambdaTooSmall):
            pipeline_tree([(standard_tree(), cofinite())])
