"""Tests for the finite grafting calculus and shoot preservation."""

import networkx as nx
import pytest

from pitree.constructions import RescaleGraft, standard_tree
from pitree.errors import InconsistentFamily
from pitree.hybrid import (
    FiniteGraft,
    SplitGraft,
    check_consistent,
    consistency_violations,
    hybr,
    hybr_oracle,
    is_graft,
    preserves_shoots,
    random_instance,
    supp,
    truncated_skeleton,
)
from pitree.points import BairePoint
from pitree.symsets import Decision


@pytest.fixture
def host() -> nx.DiGraph:
    """Binary tree of depth 2."""
    return truncated_skeleton(2, 2)


@pytest.fixture
def graft() -> FiniteGraft:
    """Graft at the root with one inner node above <0,0> and <0,1>."""
    graph = nx.DiGraph()
    graph.add_edges_from([((), "a"), ("a", (0, 0)), ("a", (0, 1))])
    return FiniteGraft(graph, name="a")


class TestFiniteGraft:
    """Tests for finite grafts."""

    def test_skeleton(self, host: nx.DiGraph) -> None:
        """Test the truncated skeleton."""
        assert host.number_of_nodes() == 7
        assert set(host.successors((1,))) == {(1, 0), (1, 1)}

    def test_parts(self, host: nx.DiGraph, graft: FiniteGraft) -> None:
        """Test root, max nodes, inner and removed nodes."""
        assert graft.root == ()
        assert graft.max_nodes == {(0, 0), (0, 1)}
        assert graft.impl == {"a"}
        assert graft.expl(host) == {(0,), (1,), (1, 0), (1, 1)}
        assert supp(host, [graft]) == {(), (0, 0), (0, 1)}

    def test_is_graft(self, host: nx.DiGraph, graft: FiniteGraft) -> None:
        """Test the graft clauses."""
        ok, violations = is_graft(host, graft)
        assert ok
        assert violations == []

    def test_single_node_is_not_a_graft(self, host: nx.DiGraph) -> None:
        """Test that a graft needs more than one node."""
        graph = nx.DiGraph()
        graph.add_node(())
        ok, violations = is_graft(host, FiniteGraft(graph))
        assert not ok
        assert "more than one node" in violations[0]

    def test_reversed_order_is_not_a_graft(self, host: nx.DiGraph) -> None:
        """Test that the graft order must agree with the host order."""
        graph = nx.DiGraph()
        graph.add_edge((0, 0), ())
        ok, violations = is_graft(host, FiniteGraft(graph))
        assert not ok
        assert any("orders disagree" in v for v in violations)


class TestHybrid:
    """Tests for hybrids of finite trees."""

    def test_hybr(self, host: nx.DiGraph, graft: FiniteGraft) -> None:
        """Test the hybrid built from the sons formula."""
        result = hybr(host, [graft])
        assert set(result.edges) == {((), "a"), ("a", (0, 0)), ("a", (0, 1))}

    def test_hybr_matches_oracle(self, host: nx.DiGraph, graft: FiniteGraft) -> None:
        """Test the sons formula against the transitive-closure oracle."""
        assert set(hybr(host, [graft]).edges) == set(hybr_oracle(host, [graft]).edges)

    def test_no_grafts(self, host: nx.DiGraph) -> None:
        """Test that the empty family leaves the host unchanged."""
        assert set(hybr(host, []).edges) == set(host.edges)

    def test_inconsistent_family(self, host: nx.DiGraph, graft: FiniteGraft) -> None:
        """Test that a graft may not be planted twice."""
        assert consistency_violations(host, [graft, graft])
        with pytest.raises(InconsistentFamily, match="coincide"):
            check_consistent(host, [graft, graft])
        with pytest.raises(InconsistentFamily):
            hybr(host, [graft, graft])

    @pytest.mark.parametrize("seed", range(10))
    def test_random_instances_are_consistent(self, seed: int) -> None:
        """Test that generated instances satisfy the consistency clauses."""
        instance = random_instance(seed, max_nodes=30)
        assert instance.seed == seed
        assert consistency_violations(instance.host, instance.grafts) == []
        assert set(hybr(instance.host, instance.grafts).edges) == set(
            hybr_oracle(instance.host, instance.grafts).edges
        )


class TestShootPreservation:
    """Tests for bounded shoot preservation of lazy grafts."""

    def test_trivial_rescale_graft_preserves_shoots(self) -> None:
        """Test a one-level graft, which reproduces the host sons."""
        graft = RescaleGraft(standard_tree(), (), 1)
        samples = [BairePoint((), 0), BairePoint((2, 1), 0)]
        outcome = preserves_shoots(graft, samples, depth=3, checks=4)
        assert outcome.decision == Decision.YES
        assert outcome.is_yes
        assert outcome.bounded

    def test_split_graft_loses_shoots(self) -> None:
        """Test that a finite inner node cannot refine residuals beyond the split."""
        graft = SplitGraft(standard_tree(), (), 2)
        outcome = preserves_shoots(graft, [BairePoint((), 0)], depth=3, checks=4)
        assert outcome.decision == Decision.NO
        assert outcome.host_node == ()
        assert outcome.residual == 3
