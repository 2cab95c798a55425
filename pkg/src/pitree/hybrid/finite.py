"""Finite grafting calculus on Hasse diagrams.

Trees and grafts are `networkx.DiGraph`s with an edge from every node to each
of its sons; x < y means y is reachable from x. `hybr` builds the hybrid from
the sons formula, `hybr_oracle` from the transitive closure of the union of
the orders restricted to the hybrid's nodes.
"""

import itertools
import logging
import random
from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field

import networkx as nx

from ..errors import InconsistentFamily

logger = logging.getLogger(__name__)

Node = Hashable


def tree_root(graph: nx.DiGraph) -> Node:
    roots = [x for x in graph.nodes if graph.in_degree(x) == 0]
    if len(roots) != 1:
        raise ValueError(f"Expected one least node, found {len(roots)}")
    return roots[0]


def below(tree: nx.DiGraph, x: Node) -> set[Node]:
    """Nodes strictly above x in the order, i.e. its descendants."""
    return set(nx.descendants(tree, x))


def truncated_skeleton(depth: int, width: int) -> nx.DiGraph:
    """Paths of length <= depth with entries < width."""
    tree = nx.DiGraph()
    tree.add_node(())
    level: list[tuple[int, ...]] = [()]
    for _ in range(depth):
        next_level = []
        for path in level:
            for i in range(width):
                son = (*path, i)
                tree.add_edge(path, son)
                next_level.append(son)
        level = next_level
    return tree


@dataclass
class FiniteGraft:
    """A finite graft: a tree whose max nodes (and root) are host nodes."""

    graph: nx.DiGraph
    name: str = ""

    @property
    def root(self) -> Node:
        return tree_root(self.graph)

    @property
    def max_nodes(self) -> set[Node]:
        return {x for x in self.graph.nodes if self.graph.out_degree(x) == 0}

    @property
    def impl(self) -> set[Node]:
        return set(self.graph.nodes) - {self.root} - self.max_nodes

    def expl(self, host: nx.DiGraph) -> set[Node]:
        """Host nodes strictly above the root and not at or above a max node."""
        covered: set[Node] = set()
        for m in self.max_nodes:
            if m in host:
                covered |= below(host, m) | {m}
        return below(host, self.root) - covered

    def less(self, x: Node, y: Node) -> bool:
        return x != y and nx.has_path(self.graph, x, y)


def is_graft(host: nx.DiGraph, graft: FiniteGraft) -> tuple[bool, list[str]]:
    """Check the four graft clauses; returns (ok, violations)."""
    violations: list[str] = []
    g = graft.graph
    if g.number_of_nodes() <= 1:
        violations.append("a graft needs more than one node")
        return False, violations
    if not nx.is_arborescence(g):
        violations.append("the graft has no least node or is not a tree")
        return False, violations
    shared = set(g.nodes) & set(host.nodes)
    expected = {graft.root} | graft.max_nodes
    if shared != expected:
        extra = sorted(map(repr, shared - expected))
        missing = sorted(map(repr, expected - shared))
        violations.append(f"shared nodes differ from root and max nodes: +{extra} -{missing}")
    for x, y in itertools.permutations(shared, 2):
        if graft.less(x, y) != (y in below(host, x)):
            violations.append(f"orders disagree on {x!r} < {y!r}")
    return not violations, violations


def consistency_violations(host: nx.DiGraph, grafts: Sequence[FiniteGraft]) -> list[str]:
    violations: list[str] = []
    for i, graft in enumerate(grafts):
        ok, found = is_graft(host, graft)
        if not ok:
            violations.extend(f"graft {i}: {v}" for v in found)
    if violations:
        return violations
    for (i, d), (j, e) in itertools.combinations(enumerate(grafts), 2):
        if set(d.graph.edges) == set(e.graph.edges) and set(d.graph.nodes) == set(e.graph.nodes):
            violations.append(f"grafts {i} and {j} coincide")
        if d.impl & e.impl:
            violations.append(f"grafts {i} and {j} share inner nodes")
        rd, re_ = d.root, e.root
        parallel = rd != re_ and re_ not in below(host, rd) and rd not in below(host, re_)
        d_under_e = any(rd == m or rd in below(host, m) for m in e.max_nodes)
        e_under_d = any(re_ == m or re_ in below(host, m) for m in d.max_nodes)
        if not (parallel or d_under_e or e_under_d):
            violations.append(f"roots of grafts {i} and {j} overlap")
    return violations


def check_consistent(host: nx.DiGraph, grafts: Sequence[FiniteGraft]) -> None:
    violations = consistency_violations(host, grafts)
    if violations:
        raise InconsistentFamily("; ".join(violations))


def supp(host: nx.DiGraph, grafts: Iterable[FiniteGraft]) -> set[Node]:
    removed: set[Node] = set()
    for graft in grafts:
        removed |= graft.expl(host)
    return set(host.nodes) - removed


def hybrid_nodes(host: nx.DiGraph, grafts: Sequence[FiniteGraft]) -> set[Node]:
    nodes = supp(host, grafts)
    for graft in grafts:
        nodes |= graft.impl
    return nodes


def hybr(host: nx.DiGraph, grafts: Sequence[FiniteGraft]) -> nx.DiGraph:
    """Hybrid of `host` and a consistent family, built from the sons formula."""
    check_consistent(host, grafts)
    nodes = hybrid_nodes(host, grafts)
    owner: dict[Node, FiniteGraft] = {}
    for graft in grafts:
        owner[graft.root] = graft
        for x in graft.impl:
            owner[x] = graft
    result = nx.DiGraph()
    result.add_nodes_from(nodes)
    for x in nodes:
        source = owner[x].graph if x in owner else host
        for son in source.successors(x):
            result.add_edge(x, son)
    logger.debug("Hybrid of %d host nodes and %d grafts", host.number_of_nodes(), len(grafts))
    return result


def hybr_oracle(host: nx.DiGraph, grafts: Sequence[FiniteGraft]) -> nx.DiGraph:
    """Hybrid built as the transitive closure of the restricted union of orders."""
    check_consistent(host, grafts)
    nodes = hybrid_nodes(host, grafts)
    union = nx.DiGraph()
    union.add_nodes_from(nodes)
    for order in [nx.transitive_closure_dag(host)] + [
        nx.transitive_closure_dag(g.graph) for g in grafts
    ]:
        union.add_edges_from((x, y) for x, y in order.edges if x in nodes and y in nodes)
    if not nx.is_directed_acyclic_graph(union):
        raise InconsistentFamily("The union of the orders has a cycle")
    closure = nx.transitive_closure_dag(union)
    return nx.transitive_reduction(closure)


@dataclass
class FiniteInstance:
    host: nx.DiGraph
    grafts: list[FiniteGraft] = field(default_factory=list)
    seed: int = 0


def _random_host(rng: random.Random, max_nodes: int) -> nx.DiGraph:
    tree = nx.DiGraph()
    tree.add_node(())
    frontier: list[tuple[int, ...]] = [()]
    while frontier and tree.number_of_nodes() < max_nodes:
        path = frontier.pop(0)
        for i in range(rng.randint(1, 4)):
            if tree.number_of_nodes() >= max_nodes:
                break
            son = (*path, i)
            tree.add_edge(path, son)
            frontier.append(son)
    return tree


def _random_graft(
    rng: random.Random, host: nx.DiGraph, root: Node, level: int, tag: int
) -> FiniteGraft | None:
    depths = nx.single_source_shortest_path_length(host, root, cutoff=level)
    targets = [y for y, d in depths.items() if d == level]
    if not targets:
        return None
    rng.shuffle(targets)
    inner = [("g", tag, j) for j in range(rng.randint(0, min(3, len(targets))))]
    graph = nx.DiGraph()
    for j, x in enumerate(inner):
        graph.add_edge(root if j == 0 else rng.choice([root, *inner[:j]]), x)
    for j, m in enumerate(targets):
        parent = inner[j] if j < len(inner) else rng.choice([root, *inner])
        graph.add_edge(parent, m)
    return FiniteGraft(graph, name=f"graft{tag}")


def random_instance(seed: int, max_nodes: int = 60, max_grafts: int = 3) -> FiniteInstance:
    """A random host tree with up to `max_grafts` consistent grafts."""
    rng = random.Random(seed)
    host = _random_host(rng, max_nodes)
    grafts: list[FiniteGraft] = []
    wanted = rng.randint(0, max_grafts)
    candidates = sorted(host.nodes, key=lambda x: (len(x), x))
    for _ in range(8 * max(1, wanted)):
        if len(grafts) >= wanted:
            break
        graft = _random_graft(rng, host, rng.choice(candidates), rng.randint(1, 2), len(grafts))
        if graft is not None and not consistency_violations(host, [*grafts, graft]):
            grafts.append(graft)
    return FiniteInstance(host, grafts, seed)
