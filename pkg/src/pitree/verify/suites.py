"""Verification suites: Baire foliage tree, grows-into, FIP, finite hybrid oracle, pipeline."""

import itertools
import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Any

import networkx as nx

from ..constructions.pipeline import PipelineTree
from ..constructions.sorgenfrey import SorgenfreyTree
from ..constructions.standard import StandardTree
from ..core.ops import RiseSet, rise
from ..core.paths import NodePath, format_path
from ..core.tree import FoliageTree
from ..errors import ConfigError, PitreeError
from ..hybrid.finite import FiniteInstance, hybr, hybr_oracle, random_instance, supp
from ..hybrid.lazy import HybridFoliageTree
from ..points import Point
from ..symsets import (
    ClopenSet,
    Decision,
    Diff,
    Minus,
    equal,
    is_disjoint,
    is_empty,
    is_subset,
    member,
)
from .conditions import (
    check_filter_shift,
    check_odd_tail,
    check_odd_transfer,
    check_rescale_heights,
    check_rise_transfer,
    cocountable_grafts,
    status_of,
)
from .faults import whole_space
from .report import CheckStatus, Report
from .samples import Sample, generate_samples

logger = logging.getLogger(__name__)

# Rise depth used for product samples by the pipeline suite; rescaled coordinates enter late
THEOREM2_RISE_DEPTH = 10


class TailPromise:
    """Shape of rise sets a construction promises beyond mere nonemptiness."""

    NONE = "none"
    ALL = "all"  # a tail of heights
    ODD = "odd"  # a tail of odd heights

    # All valid promises
    ALLOWED = (NONE, ALL, ODD)


@dataclass(frozen=True)
class NodeCheck:
    check: str
    clause: str
    status: str
    node: str
    witness: Any = None
    detail: str | None = None


# Order (and clause) in which node checks are reported
NODE_CHECKS = (
    ("partition", "locally strict"),
    ("nonincreasing", "nonincreasing"),
    ("nonempty", "nonempty leaves"),
    ("omega-branching", "omega-branching"),
    ("separation", "strict branches"),
    ("avoids-points", "(g3)"),
)
_CLAUSES = dict(NODE_CHECKS)


def probed_sons(sons: int, probe: int) -> list[int]:
    """Sons expanded below every node: the first `probe` and son N - 1."""
    return sorted({*range(probe), sons - 1})


def _node_check(check: str, status: str, path: NodePath, **kwargs: Any) -> NodeCheck:
    return NodeCheck(check, _CLAUSES[check], status, format_path(path), **kwargs)


def _peels_off(leaf: ClopenSet, current: ClopenSet, rest: ClopenSet, i: int) -> tuple[str, str]:
    """Whether `current` splits into `leaf` and `rest`, with the first failed test."""
    verdict = is_subset(leaf, current)
    if verdict != Decision.YES:
        return verdict, f"son {i} leaves residual({i})"
    verdict = is_disjoint(leaf, rest)
    if verdict != Decision.YES:
        return verdict, f"son {i} meets the residual from {i + 1}"
    verdict = equal(Diff(current, leaf), rest)
    return verdict, f"residual({i}) minus son {i} is not residual({i + 1})"


def _partition(tree: FoliageTree, path: NodePath, sons: int) -> NodeCheck:
    """residual(0) is the node's leaf and sons 0..N-1 peel off the residuals exactly."""
    family = tree.sons_of(path)
    verdict = equal(family.residual(0), tree.leaf(path))
    if verdict != Decision.YES:
        return _node_check(
            "partition",
            status_of(verdict),
            path,
            witness={"son": None},
            detail="residual(0) differs from the leaf",
        )
    count = sons if family.size is None else min(sons, family.size)
    for i in range(count):
        leaf = family.leaf_at(i)
        verdict, detail = _peels_off(leaf, family.residual(i), family.residual(i + 1), i)
        if verdict != Decision.YES:
            return _node_check(
                "partition", status_of(verdict), path, witness={"son": i}, detail=detail
            )
    if family.size is not None and is_empty(family.residual(family.size)) != Decision.YES:
        return _node_check(
            "partition",
            CheckStatus.FAIL,
            path,
            witness={"son": family.size},
            detail="leaves beyond the last son",
        )
    return _node_check("partition", CheckStatus.PASS, path, witness={"sons": count})


def _first_bad(
    check: str, path: NodePath, count: int, test: Callable[[int], str], expected: str
) -> NodeCheck:
    for i in range(count):
        verdict = test(i)
        if verdict != expected:
            status = CheckStatus.UNDECIDED if verdict == Decision.UNKNOWN else CheckStatus.FAIL
            return _node_check(check, status, path, witness={"son": i})
    return _node_check(check, CheckStatus.PASS, path)


def _check_node(
    tree: FoliageTree, path: NodePath, sons: int, loss: Sequence[Point]
) -> list[NodeCheck]:
    results: list[NodeCheck] = []
    try:
        family = tree.sons_of(path)
        count = sons if family.size is None else min(sons, family.size)
        leaf = tree.leaf(path)
        partition = _partition(tree, path, sons)
        results.append(partition)
        if partition.status == CheckStatus.PASS:
            # every son lies in residual(i), hence in residual(0) = leaf
            results.append(
                _node_check("nonincreasing", CheckStatus.PASS, path, witness={"via": "partition"})
            )
        else:
            results.append(
                _first_bad(
                    "nonincreasing",
                    path,
                    count,
                    lambda i: is_subset(family.leaf_at(i), leaf),
                    Decision.YES,
                )
            )
        results.append(
            _first_bad(
                "nonempty", path, count, lambda i: is_empty(family.leaf_at(i)), Decision.NO
            )
        )
        results.append(
            _node_check(
                "omega-branching",
                CheckStatus.PASS if family.size is None else CheckStatus.FAIL,
                path,
                witness=None if family.size is None else {"sons": family.size},
            )
        )
        bound = tree.separation_bound(len(path))
        if bound is not None:
            value = tree.separation(path)
            if value is None:
                status = CheckStatus.UNDECIDED
            else:
                status = CheckStatus.PASS if value <= bound else CheckStatus.FAIL
            results.append(
                _node_check(
                    "separation",
                    status,
                    path,
                    witness={"value": None if value is None else str(value), "bound": str(bound)},
                )
            )
        if loss:
            for i in range(count):
                kept = [str(p) for p in loss if member(p, family.leaf_at(i))]
                if kept:
                    results.append(
                        _node_check(
                            "avoids-points",
                            CheckStatus.FAIL,
                            path,
                            witness={"son": i, "points": kept},
                        )
                    )
                    break
            else:
                results.append(_node_check("avoids-points", CheckStatus.PASS, path))
    except PitreeError as err:
        results.append(_node_check("partition", CheckStatus.FAIL, path, detail=str(err)))
    return results


def probed_nodes(tree: FoliageTree, depth: int, sons: int, probe: int) -> list[NodePath]:
    """Nodes of height < depth reached through the probed sons, in breadth-first order."""
    nodes: list[NodePath] = []
    frontier: list[NodePath] = [()]
    for _ in range(depth):
        nodes.extend(frontier)
        next_frontier: list[NodePath] = []
        for path in frontier:
            size = tree.sons_of(path).size
            next_frontier.extend(
                (*path, i) for i in probed_sons(sons, probe) if size is None or i < size
            )
        frontier = next_frontier
    return nodes


def baire_foliage_suite(
    tree: FoliageTree,
    depth: int = 6,
    sons: int = 32,
    *,
    probe: int = 2,
    workers: int = 4,
) -> Report:
    """Check that `tree` is an open, locally strict foliage tree with strict branches on X.

    The root leaf must be the whole space minus the tree's removed points; below
    it every probed node of height < depth is checked independently.
    """
    loss: tuple[Point, ...] = tuple(getattr(tree, "loss", ()))
    report = Report(suite="baire", tree=tree.description, depth=depth)
    try:
        expected = whole_space(tree)
        verdict = equal(tree.root_leaf, Minus(expected, loss) if loss else expected)
        report.add("root-leaf", "F_0 = X", status_of(verdict), node="<>")
        nodes = probed_nodes(tree, depth, sons, probe)
    except PitreeError as err:
        report.add("root-leaf", "F_0 = X", CheckStatus.FAIL, node="<>", detail=str(err))
        return report

    results: dict[int, list[NodeCheck]] = {}
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        futures = {
            executor.submit(_check_node, tree, path, sons, loss): i for i, path in enumerate(nodes)
        }
        for done, future in enumerate(as_completed(futures), 1):
            results[futures[future]] = future.result()
            if done % 100 == 0:
                logger.info("Checked %d/%d nodes of %s", done, len(nodes), tree.description)

    by_check: dict[str, list[NodeCheck]] = {check: [] for check, _ in NODE_CHECKS}
    for i in range(len(nodes)):
        for result in results[i]:
            by_check[result.check].append(result)
    for check, clause in NODE_CHECKS:
        entries = by_check[check]
        if not entries:
            continue
        bad = [e for e in entries if e.status != CheckStatus.PASS]
        for e in bad:
            report.add(e.check, e.clause, e.status, node=e.node, witness=e.witness, detail=e.detail)
        if not bad:
            report.add(check, clause, CheckStatus.PASS, witness={"nodes": len(entries)})
    logger.info(report.summary())
    return report


def expected_tail(tree: FoliageTree) -> str:
    if isinstance(tree, StandardTree | SorgenfreyTree):
        return TailPromise.ALL
    if cocountable_grafts(tree) is not None:
        return TailPromise.ODD
    return TailPromise.NONE


def _rise_entry(
    tree: FoliageTree, sample: Sample, depth: int, sons: int, search_cap: int
) -> tuple[RiseSet | None, str | None]:
    try:
        return rise(tree, sample.point, sample.nbhd, depth, sons=sons, search_cap=search_cap), None
    except PitreeError as err:
        return None, str(err)


def grows_into_suite(
    tree: FoliageTree,
    samples: Sequence[Sample],
    depth: int = 6,
    *,
    tail: str | None = None,
    sons: int = 32,
    search_cap: int = 256,
    workers: int = 4,
) -> Report:
    """Every sampled (point, neighborhood) pair has a rise witness below `depth`.

    An empty truncated rise set is inconclusive, not a violation. `tail`
    defaults to what the construction promises.
    """
    promise = tail or expected_tail(tree)
    if promise not in TailPromise.ALLOWED:
        raise ConfigError(f"Unknown tail promise {promise!r}")
    report = Report(suite="grows-into", tree=tree.description, depth=depth)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        outcomes = list(
            executor.map(lambda s: _rise_entry(tree, s, depth, sons, search_cap), samples)
        )

    for sample, (rise_set, error) in zip(samples, outcomes, strict=True):
        node = str(sample.point)
        if rise_set is None:
            report.add("rise", "(a)", CheckStatus.FAIL, node=node, detail=error)
            continue
        witness = {"known": rise_set.sorted(), "undecided": sorted(rise_set.undecided)}
        if rise_set.known:
            report.add("rise", "(a)", CheckStatus.PASS, node=node, witness=witness)
        else:
            report.add(
                "rise",
                "(a)",
                CheckStatus.UNDECIDED,
                node=node,
                witness=witness,
                detail=f"no rise witness below depth {depth}",
            )
        if promise == TailPromise.ALL:
            start = rise_set.tail_start()
            report.add(
                "rise-tail",
                "cofin omega",
                CheckStatus.PASS if start is not None else CheckStatus.UNDECIDED,
                node=node,
                witness={"start": start},
            )

    if isinstance(tree, HybridFoliageTree) and cocountable_grafts(tree) is not None:
        report.extend(check_odd_transfer(tree, samples, depth, sons=sons, search_cap=search_cap))
        report.extend(check_odd_tail(tree, samples, depth, sons=sons, search_cap=search_cap))
    logger.info(report.summary())
    return report


def fip_check(rise_sets: Sequence[RiseSet], name: str = "rise sets") -> Report:
    """Pairwise and full intersections of the known parts are nonempty.

    Empty intersections of truncated sets are flagged as depth-limited.
    """
    depth = min((r.depth for r in rise_sets), default=None)
    report = Report(suite="fip", tree=name, depth=depth)
    pairs = itertools.combinations(range(len(rise_sets)), 2)
    groups = [((i, j), [rise_sets[i], rise_sets[j]]) for i, j in pairs]
    if len(rise_sets) > 2:
        groups.append((tuple(range(len(rise_sets))), list(rise_sets)))
    for indices, group in groups:
        common = group[0]
        for other in group[1:]:
            common = common.intersection(other)
        label = ",".join(map(str, indices))
        if common.known:
            report.add(
                "fip", "(b1)", CheckStatus.PASS, node=label, witness={"common": common.sorted()}
            )
        else:
            report.add(
                "fip",
                "(b1)",
                CheckStatus.UNDECIDED,
                node=label,
                witness={"common": []},
                detail=f"depth-limited: empty below {common.depth}",
            )
    logger.info(report.summary())
    return report


# --- finite hybrid oracle -------------------------------------------------


def _instance_violations(instance: FiniteInstance) -> dict[str, str]:
    """First violation per clause for one random instance."""
    host, grafts = instance.host, instance.grafts
    built = hybr(host, grafts)
    oracle = hybr_oracle(host, grafts)
    found: dict[str, str] = {}
    if set(built.nodes) != set(oracle.nodes) or set(built.edges) != set(oracle.edges):
        extra = sorted(map(repr, set(built.edges) ^ set(oracle.edges)))[:3]
        found["hybr"] = f"edges differ: {extra}"

    owner = {}
    for graft in grafts:
        owner[graft.root] = graft
        for x in graft.impl:
            owner[x] = graft
    for x in oracle.nodes:
        source = owner[x].graph if x in owner else host
        if set(oracle.successors(x)) != set(source.successors(x)):
            found.setdefault("(c)", f"sons of {x!r}")

    reach = {x: nx.descendants(oracle, x) for x in oracle.nodes}
    for graft in grafts:
        nodes = set(graft.graph.nodes)
        if not nodes <= set(oracle.nodes):
            found.setdefault("(a)", f"{graft.name} nodes missing from the hybrid")
            continue
        for x, y in itertools.permutations(nodes, 2):
            if graft.less(x, y) != (y in reach[x]):
                found.setdefault("(a)", f"{graft.name} order differs on {x!r}, {y!r}")
                break
    kept = supp(host, grafts)
    if kept != set(host.nodes) & set(oracle.nodes):
        found.setdefault("(b)", "support differs from the host nodes kept")
    else:
        host_reach = {x: nx.descendants(host, x) for x in kept}
        for x, y in itertools.permutations(kept, 2):
            if (y in host_reach[x]) != (y in reach[x]):
                found.setdefault("(b)", f"host order differs on {x!r}, {y!r}")
                break
    return found


def hybrid_oracle_suite(
    count: int = 100, seed: int = 0, *, max_nodes: int = 60, max_grafts: int = 3
) -> Report:
    """Hybrids of random finite instances against the transitive-closure oracle."""
    report = Report(suite="hybrid-oracle", tree=f"random({count}, seed={seed})")
    failures: dict[str, list[int]] = {"hybr": [], "(a)": [], "(b)": [], "(c)": []}
    details: dict[str, str] = {}
    grafts = 0
    for k in range(count):
        instance = random_instance(seed + k, max_nodes, max_grafts)
        grafts += len(instance.grafts)
        try:
            found = _instance_violations(instance)
        except PitreeError as err:
            found = {"hybr": str(err)}
        for clause, detail in found.items():
            failures[clause].append(instance.seed)
            details.setdefault(clause, detail)
    for clause, seeds in failures.items():
        report.add(
            "hybrid-oracle",
            clause,
            CheckStatus.FAIL if seeds else CheckStatus.PASS,
            witness={"instances": count, "grafts": grafts, "failing_seeds": seeds},
            detail=details.get(clause),
        )
    logger.info(report.summary())
    return report


# --- pipeline -------------------------------------------------------------


def theorem2_suite(
    tree: FoliageTree,
    depth: int = 6,
    sons: int = 32,
    *,
    probe: int = 2,
    workers: int = 4,
    samples: int = 10,
    seed: int = 0,
    search_cap: int = 256,
    rise_depth: int = THEOREM2_RISE_DEPTH,
) -> Report:
    """Shifted filters, rescaled components, and the product of a pipeline tree."""
    if not isinstance(tree, PipelineTree):
        raise ConfigError(f"{tree.description} is not a pipeline tree")
    report = Report(suite="theorem2", tree=tree.description, depth=depth)
    report.extend(check_filter_shift(tree.shift))
    for i, component in enumerate(tree.rescaled):
        logger.info("Checking component %d: %s", i, component.description)
        component_samples = generate_samples(component.host, samples, seed + i)
        report.extend(
            check_rise_transfer(
                component, component_samples, depth, sons=sons, search_cap=search_cap
            )
        )
        report.extend(check_rescale_heights(component, depth, probe))
    report.extend(baire_foliage_suite(tree, depth, sons, probe=probe, workers=workers))
    product_samples = generate_samples(tree, samples, seed)
    report.extend(
        grows_into_suite(
            tree, product_samples, rise_depth, sons=sons, search_cap=search_cap, workers=workers
        )
    )
    logger.info(report.summary())
    return report
