"""Tests for reports, suites, condition checks and fault injection."""

import json
import time
from fractions import Fraction

import pytest

from pitree.constructions import (
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
)
from pitree.core import RiseSet, rise
from pitree.errors import ConfigError
from pitree.points import BairePoint, ProductPoint, SorgPoint
from pitree.symsets import Box, Cyl, Decision, SorgIv, equal, member
from pitree.verify import (
    CheckStatus,
    ExitCode,
    FaultKind,
    FaultyTree,
    Report,
    Sample,
    baire_foliage_suite,
    check_cocountable,
    check_filter_shift,
    check_index_identity,
    check_odd_tail,
    check_rescale_heights,
    check_rise_transfer,
    default_point,
    expected_tail,
    fip_check,
    generate_samples,
    grows_into_suite,
    hybrid_oracle_suite,
    inject_fault,
    merge,
    theorem2_suite,
)
from pitree.verify.suites import TailPromise

REMOVED = [Fraction(0), Fraction(1, 2), Fraction(-1, 3), Fraction(5, 4), Fraction(2, 3)]


@pytest.fixture
def cocountable_sorg():
    """Sorgenfrey line without five rational points."""
    return cocountable_tree(sorgenfrey_tree(), [SorgPoint(q) for q in REMOVED])


class TestReport:
    """Tests for Report."""

    def test_empty_report_passes(self) -> None:
        """Test that a report without entries passes."""
        report = Report(suite="baire", tree="standard")
        assert report.status == CheckStatus.PASS
        assert report.exit_code == ExitCode.OK

    def test_status_precedence(self) -> None:
        """Test that a failure outranks an undecided entry."""
        report = Report(suite="baire", tree="standard")
        report.add("partition", "locally strict", CheckStatus.PASS)
        report.add("rise", "(a)", CheckStatus.UNDECIDED)
        assert report.status == CheckStatus.UNDECIDED
        assert report.exit_code == ExitCode.INCONCLUSIVE
        report.add("nonempty", "nonempty leaves", CheckStatus.FAIL, node="<0>")
        assert report.status == CheckStatus.FAIL
        assert report.exit_code == ExitCode.VIOLATION
        assert [e.node for e in report.failures] == ["<0>"]

    def test_unknown_status(self) -> None:
        """Test that only known statuses are accepted."""
        report = Report(suite="baire", tree="standard")
        with pytest.raises(ValueError, match="Unknown check status"):
            report.add("partition", "locally strict", "maybe")

    def test_summary_and_json(self) -> None:
        """Test the summary line and the JSON form."""
        report = Report(suite="fip", tree="t", depth=4)
        report.add("fip", "(b1)", CheckStatus.PASS, witness={"common": [3]})
        assert report.summary() == "fip on t: 1 passed, 0 failed, 0 undecided"
        data = json.loads(report.to_json())
        assert data["status"] == "pass"
        assert data["entries"][0]["clause"] == "(b1)"
        assert "node" not in data["entries"][0]

    def test_merge(self) -> None:
        """Test merging reports."""
        a = Report(suite="a", tree="t")
        a.add("x", "(a)", CheckStatus.PASS)
        b = Report(suite="b", tree="t")
        b.add("y", "(b)", CheckStatus.FAIL)
        merged = merge("both", "t", [a, b], depth=3)
        assert [e.check for e in merged.entries] == ["x", "y"]
        assert merged.status == CheckStatus.FAIL


class TestBaireFoliageSuite:
    """Tests for the Baire foliage tree suite."""

    def test_standard_tree(self) -> None:
        """Test that the standard tree passes every node check."""
        report = baire_foliage_suite(standard_tree(), depth=4, sons=8, workers=2)
        assert report.status == CheckStatus.PASS
        checks = {e.check for e in report.entries}
        assert {"root-leaf", "partition", "nonincreasing", "omega-branching"} <= checks

    def test_sorgenfrey_tree(self) -> None:
        """Test the Sorgenfrey tree, including strict branches."""
        report = baire_foliage_suite(sorgenfrey_tree(), depth=4, sons=8, workers=2)
        assert not report.failures
        assert "separation" in {e.check for e in report.entries}

    def test_product_tree(self) -> None:
        """Test a two-fold product of the standard and Sorgenfrey trees."""
        tree = product_tree(2, [standard_tree(), sorgenfrey_tree()])
        report = baire_foliage_suite(tree, depth=4, sons=6, workers=2)
        assert not report.failures

    def test_rescaled_tree(self) -> None:
        """Test the standard tree rescaled by 2n+1."""
        tree = rescale_tree(standard_tree(), affine(2, 1))
        report = baire_foliage_suite(tree, depth=4, sons=6, workers=2)
        assert not report.failures

    def test_cocountable_tree(self, cocountable_sorg) -> None:
        """Test that removed points stay out of every leaf."""
        report = baire_foliage_suite(cocountable_sorg, depth=4, sons=6, workers=2)
        assert not report.failures
        assert "avoids-points" in {e.check for e in report.entries}


FULL_SIZE_TREES = {
    "standard": standard_tree,
    "sorgenfrey": sorgenfrey_tree,
    "product(2;S,S)": lambda: product_tree(2, [standard_tree(), standard_tree()]),
    "product(2;sorg,sorg)": lambda: product_tree(2, [sorgenfrey_tree(), sorgenfrey_tree()]),
    "product(3;sorg,sorg,S)": lambda: product_tree(
        3, [sorgenfrey_tree(), sorgenfrey_tree(), standard_tree()]
    ),
    "product(omega;sorg)": lambda: product_tree(None, [sorgenfrey_tree()]),
}


@pytest.mark.slow
class TestBaireFoliageSuiteFullSize:
    """The Baire suite at depth 6 with 32 explicit sons per node."""

    @pytest.mark.parametrize("name", list(FULL_SIZE_TREES))
    def test_passes_within_time(self, name: str) -> None:
        """Test that the suite passes in under 30 seconds."""
        tree = FULL_SIZE_TREES[name]()
        started = time.perf_counter()
        report = baire_foliage_suite(tree, depth=6, sons=32, workers=4)
        elapsed = time.perf_counter() - started
        assert not report.failures
        assert elapsed < 30, f"{name} took {elapsed:.1f}s"


class TestGrowsInto:
    """Tests for the grows-into suite and the FIP check."""

    def test_standard_tree(self) -> None:
        """Test that cylinder neighborhoods rise on a tail."""
        tree = standard_tree()
        samples = generate_samples(tree, 10, seed=0)
        report = grows_into_suite(tree, samples, depth=6, workers=2)
        assert report.status == CheckStatus.PASS
        assert report.count(CheckStatus.PASS) == 20

    def test_cocountable_tree(self, cocountable_sorg) -> None:
        """Test rise witnesses and the odd-height checks on a point-removed tree."""
        samples = generate_samples(cocountable_sorg, 5, seed=0)
        report = grows_into_suite(cocountable_sorg, samples, depth=8, workers=2)
        assert not report.failures
        assert "(♦)" in {e.clause for e in report.entries}

    def test_unknown_promise(self) -> None:
        """Test that the tail promise is validated."""
        with pytest.raises(ConfigError, match="tail promise"):
            grows_into_suite(standard_tree(), [], tail="sometimes")

    def test_expected_tail(self, cocountable_sorg) -> None:
        """Test the promises of the constructions."""
        assert expected_tail(standard_tree()) == TailPromise.ALL
        assert expected_tail(cocountable_sorg) == TailPromise.ODD
        assert expected_tail(product_tree(2, [standard_tree()] * 2)) == TailPromise.NONE

    def test_fip(self) -> None:
        """Test pairwise and full intersections."""
        sets = [RiseSet(frozenset(s), 6) for s in ({1, 2, 3}, {2, 3}, {3, 4})]
        report = fip_check(sets)
        assert report.status == CheckStatus.PASS
        assert [e.node for e in report.entries] == ["0,1", "0,2", "1,2", "0,1,2"]

    def test_fip_depth_limited(self) -> None:
        """Test that an empty truncated intersection is undecided."""
        report = fip_check([RiseSet(frozenset({1}), 6), RiseSet(frozenset({5}), 6)])
        assert report.status == CheckStatus.UNDECIDED
        assert "depth-limited" in (report.entries[0].detail or "")


class TestSamples:
    """Tests for sample generation."""

    def test_samples_are_deterministic(self) -> None:
        """Test that the seed fixes the samples."""
        tree = sorgenfrey_tree()
        assert generate_samples(tree, 5, seed=3) == generate_samples(tree, 5, seed=3)

    def test_samples_lie_in_the_root_leaf(self, cocountable_sorg) -> None:
        """Test that removed points are never sampled."""
        for sample in generate_samples(cocountable_sorg, 10, seed=1):
            assert member(sample.point, cocountable_sorg.root_leaf)
            assert member(sample.point, sample.nbhd)

    def test_default_point(self, cocountable_sorg) -> None:
        """Test fixed points of the root leaf."""
        assert default_point(standard_tree()) == BairePoint((), 0)
        assert default_point(cocountable_sorg) == SorgPoint(Fraction(1, 3))

    @pytest.mark.parametrize("seed", range(3))
    def test_product_boxes_are_proper(self, seed: int) -> None:
        """Test that sampled product boxes are smaller than the whole space."""
        tree = product_tree(2, [standard_tree(), sorgenfrey_tree()])
        for sample in generate_samples(tree, 10, seed=seed):
            assert member(sample.point, sample.nbhd)
            assert equal(sample.nbhd, tree.root_leaf) == Decision.NO

    def test_product_box_rises(self) -> None:
        """Test that a box of first-level cylinders rises from height 2."""
        tree = product_tree(2, [standard_tree(), standard_tree()])
        zero = BairePoint((), 0)
        p = ProductPoint((zero, zero), zero)
        box = Box.of({0: Cyl((0,)), 1: Cyl((0,))}, 2)
        assert rise(tree, p, box, 8).sorted() == [2, 3, 4, 5, 6, 7]


class TestConditions:
    """Tests for the construction-specific checks."""

    @pytest.mark.parametrize("lam", [2, 3])
    def test_index_identity(self, lam: int) -> None:
        """Test that box differences split into the next level's boxes."""
        report = check_index_identity(lam, points=64)
        assert report.entries
        assert report.status == CheckStatus.PASS

    def test_filter_shift_cofinite(self) -> None:
        """Test the shifted images of cofinite certificates."""
        result = shift_filters([cofinite_upto(8), cofinite_upto(8)], [cofinite_upto(8)])
        report = check_filter_shift(result)
        assert report.status == CheckStatus.PASS
        assert len(report.entries) == 9 + 9 * 9

    def test_filter_shift_progression(self) -> None:
        """Test a progression certificate on the second coordinate."""
        result = shift_filters([cofinite_upto(8), progression(3)], [progression(3)])
        assert check_filter_shift(result).status == CheckStatus.PASS

    @pytest.mark.parametrize("alpha", [identity(), affine(2, 1)])
    def test_rescale_heights(self, alpha) -> None:
        """Test that host nodes land at height alpha(h - 1) + 1 with their leaves."""
        tree = rescale_tree(standard_tree(), alpha)
        report = check_rescale_heights(tree, 6)
        assert report.entries
        assert report.status == CheckStatus.PASS

    def test_rise_transfer(self) -> None:
        """Test that alpha carries host rise heights into the rescaled tree."""
        tree = rescale_tree(standard_tree(), affine(2, 1))
        samples = generate_samples(standard_tree(), 10, seed=0)
        report = check_rise_transfer(tree, samples, 8, sons=8)
        assert len(report.entries) == 10
        assert not report.failures

    def test_rise_transfer_sorgenfrey(self) -> None:
        """Test that alpha carries Sorgenfrey rise heights into the rescaled tree."""
        tree = rescale_tree(sorgenfrey_tree(), affine(2, 1))
        samples = generate_samples(sorgenfrey_tree(), 10, seed=0)
        report = check_rise_transfer(tree, samples, 8, sons=8)
        assert len(report.entries) == 10
        assert not report.failures

    def test_rescale_check_needs_rescaled_tree(self, cocountable_sorg) -> None:
        """Test that only rescaled trees are accepted."""
        with pytest.raises(ConfigError, match="not a rescaled tree"):
            check_rescale_heights(cocountable_sorg, 4)

    def test_cocountable(self, cocountable_sorg) -> None:
        """Test cut stages, even roots and point-free leaves."""
        report = check_cocountable(cocountable_sorg, 6)
        assert not report.failures
        clauses = {e.clause for e in report.entries}
        assert {"(f3)", "(g1)", "(g3)", "(g4)"} <= clauses

    def test_cocountable_check_needs_removed_points(self) -> None:
        """Test that trees without removed points are refused."""
        with pytest.raises(ConfigError, match="does not remove points"):
            check_cocountable(rescale_tree(standard_tree(), identity()), 4)

    def test_odd_tail(self, cocountable_sorg) -> None:
        """Test that sampled rise sets rise at every odd height past the host tail."""
        samples = generate_samples(cocountable_sorg, 5, seed=0)
        report = check_odd_tail(cocountable_sorg, samples, 8)
        assert len(report.entries) == 5
        assert not report.failures

    def test_odd_tail_below_bound_fails(self, cocountable_sorg) -> None:
        """Test that odd heights missing from the window past `bound` are violations."""
        third = Fraction(1, 3)
        tiny = Sample(SorgPoint(third), SorgIv(third, third + Fraction(1, 2**40)))
        report = check_odd_tail(cocountable_sorg, [tiny], 8, bound=1)
        assert report.status == CheckStatus.FAIL
        assert report.entries[0].witness["bound"] == 1

    def test_odd_tail_without_host_tail(self, cocountable_sorg, caplog) -> None:
        """Test that a neighborhood the host never refines stays undecided."""
        third = Fraction(1, 3)
        tiny = Sample(SorgPoint(third), SorgIv(third, third + Fraction(1, 2**40)))
        with caplog.at_level("WARNING", logger="pitree.verify.report"):
            report = check_odd_tail(cocountable_sorg, [tiny], 8)
        assert report.status == CheckStatus.UNDECIDED
        assert "Undecided odd-tail" in caplog.text


class TestHybridOracle:
    """Tests for the finite hybrid oracle suite."""

    def test_hundred_instances(self) -> None:
        """Test that the sons formula matches the oracle on 100 instances."""
        report = hybrid_oracle_suite(100, seed=0)
        assert report.status == CheckStatus.PASS
        assert {e.clause for e in report.entries} == {"hybr", "(a)", "(b)", "(c)"}


class TestPipelineSuite:
    """Tests for the pipeline suite."""

    def test_pipeline(self) -> None:
        """Test two Sorgenfrey components with cofinite certificates."""
        tree = pipeline_tree([(sorgenfrey_tree(), cofinite()), (sorgenfrey_tree(), cofinite())])
        report = theorem2_suite(tree, depth=4, sons=6, workers=2, samples=3, rise_depth=8)
        assert not report.failures
        clauses = {e.clause for e in report.entries}
        assert {"(♣)", "(♥)", "(*j0)", "(a)"} <= clauses

    def test_requires_pipeline(self) -> None:
        """Test that other trees are refused."""
        with pytest.raises(ConfigError, match="not a pipeline tree"):
            theorem2_suite(standard_tree())


class TestFaults:
    """Tests for seeded fault injection."""

    @pytest.mark.parametrize("seed", range(10))
    @pytest.mark.parametrize("kind", [FaultKind.OVERLAP, FaultKind.ESCAPE])
    def test_faults_are_detected(self, kind: str, seed: int) -> None:
        """Test that a corrupted son leaf fails the Baire suite."""
        tree = inject_fault(standard_tree(), kind, seed)
        report = baire_foliage_suite(tree, depth=4, sons=8, workers=2)
        assert report.status == CheckStatus.FAIL
        assert report.exit_code == ExitCode.VIOLATION

    @pytest.mark.parametrize("seed", range(3))
    def test_retained_point_is_detected(self, cocountable_sorg, seed: int) -> None:
        """Test that a removed point put back into a leaf is found."""
        tree = inject_fault(cocountable_sorg, FaultKind.RETAIN, seed)
        report = baire_foliage_suite(tree, depth=4, sons=6, workers=2)
        assert report.failures

    def test_fault_location_is_seeded(self) -> None:
        """Test that the seed fixes where the fault goes."""
        a = inject_fault(standard_tree(), FaultKind.OVERLAP, 5)
        b = inject_fault(standard_tree(), FaultKind.OVERLAP, 5)
        assert (a.node, a.index) == (b.node, b.index)
        assert len(a.node) < 3
        assert all(i < 2 for i in a.node)

    def test_unknown_fault(self) -> None:
        """Test that unknown fault kinds are refused."""
        with pytest.raises(ConfigError, match="Unknown fault"):
            FaultyTree(standard_tree(), "flip")

    def test_retain_needs_removed_points(self) -> None:
        """Test that retaining requires a tree that removes points."""
        with pytest.raises(ConfigError, match="removes no points"):
            inject_fault(standard_tree(), FaultKind.RETAIN)
