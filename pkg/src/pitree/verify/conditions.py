"""Construction-specific condition checks.

Each check instantiates one clause on a finite truncation and reports it with
a witness: the index identity of product trees (a2), the shifted filters
(♣), rescale heights (*j0) and rise transfer (♥), the co-countable recursion
((f3), (g1), (g3), (g4)) and odd-height rise ((♦), (♠)).
"""

import itertools
import logging
import random
from collections.abc import Sequence

from ..constructions.cocountable import CocountableGrafts
from ..constructions.product import EvenSons, OddSons, ProductTree
from ..constructions.rescale import RescaleGrafts
from ..constructions.shift import ShiftResult
from ..constructions.standard import standard_tree
from ..core.ops import RiseSet, rise, scope
from ..core.paths import NodePath, format_path
from ..errors import ConfigError, PitreeError
from ..hybrid.lazy import HybridFoliageTree, host_label
from ..points import BairePoint, ProductPoint
from ..symsets import (
    ClopenSet,
    Decision,
    Diff,
    Minus,
    equal,
    is_disjoint,
    is_empty,
    member,
    point_to_json,
    union_of,
)
from .report import CheckStatus, Report
from .samples import Sample

logger = logging.getLogger(__name__)

# Points checked per (v, m) by the brute-force half of the index identity
IDENTITY_POINTS = 256

# Sons peeled off per (v, m) by the symbolic half of the index identity
PARTITION_SONS = 8

# Telescoping steps checked per co-countable stage
TELESCOPE_STEPS = 3


def status_of(decision: str) -> str:
    return {
        Decision.YES: CheckStatus.PASS,
        Decision.NO: CheckStatus.FAIL,
        Decision.UNKNOWN: CheckStatus.UNDECIDED,
    }[decision]


def _negate(decision: str) -> str:
    if decision == Decision.UNKNOWN:
        return decision
    return Decision.NO if decision == Decision.YES else Decision.YES


def _paths(depth: int, width: int) -> list[NodePath]:
    return [tuple(p) for p in itertools.product(range(width), repeat=depth)]


# --- (a2) -----------------------------------------------------------------


def _sequential_partition(
    parent: ClopenSet, family: OddSons, count: int
) -> tuple[str, int | None]:
    """Leaves 0..count-1 peel off the residuals one by one; returns (status, failing son)."""
    verdict = equal(family.residual(0), parent)
    if verdict != Decision.YES:
        return status_of(verdict), None
    for c in range(count):
        leaf = family.leaf_at(c)
        rest = family.residual(c + 1)
        verdict = is_disjoint(leaf, rest)
        if verdict == Decision.YES:
            verdict = equal(union_of([leaf, rest]), family.residual(c))
        if verdict != Decision.YES:
            return status_of(verdict), c
    return CheckStatus.PASS, None


def _grid_points(coords: list[int], length: int) -> list[ProductPoint]:
    """Product points whose given coordinates run over prefixes with entries < 4."""
    prefixes = [tuple(p) for p in itertools.product(range(4), repeat=length)]
    width = max(coords) + 1
    points = []
    for choice in itertools.product(prefixes, repeat=len(coords)):
        explicit = [BairePoint((), 0)] * width
        for c, prefix in zip(coords, choice, strict=True):
            explicit[c] = BairePoint(prefix, 0)
        points.append(ProductPoint(tuple(explicit), BairePoint((), 0)))
    return points


def _sample_points(
    coords: list[int], length: int, limit: int, rng: random.Random
) -> list[ProductPoint]:
    if 4 ** (length * len(coords)) <= limit:
        return _grid_points(coords, length)
    width = max(coords) + 1
    points = []
    for _ in range(limit):
        explicit = [BairePoint((), 0)] * width
        for c in coords:
            explicit[c] = BairePoint(tuple(rng.randrange(4) for _ in range(length)), 0)
        points.append(ProductPoint(tuple(explicit), BairePoint((), 0)))
    return points


def check_index_identity(
    lam: int,
    n_max: int = 2,
    m_max: int = 3,
    width: int = 3,
    *,
    points: int = IDENTITY_POINTS,
    seed: int = 0,
) -> Report:
    """Box differences of a product of standard trees split into the boxes of the next level.

    For every even node v of height 2n (entries < width) and every m, the leaf
    of v + <m> must be the disjoint union of the leaves of its sons, both as
    symbolic sets and pointwise on Baire prefixes with entries < 4.
    """
    tree = ProductTree(lam, [standard_tree()] * lam)
    report = Report(suite="index-identity", tree=tree.description)
    rng = random.Random(seed)
    for n in range(n_max + 1):
        for v in _paths(2 * n, width):
            even = tree.sons_of(v)
            assert isinstance(even, EvenSons)
            for m in range(m_max + 1):
                odd = tree.sons_of((*v, m))
                assert isinstance(odd, OddSons)
                whole = even.leaf_at(m)
                node = format_path((*v, m))
                first_block = min(odd.blocks.count_upto(m + 1), PARTITION_SONS)
                try:
                    status, son = _sequential_partition(whole, odd, first_block)
                except PitreeError as err:
                    status, son = CheckStatus.FAIL, None
                    logger.debug("Index identity at %s: %s", node, err)
                report.add(
                    "index-identity",
                    "(a2)",
                    status,
                    node=node,
                    witness={"m": m, "sons": first_block, "son": son},
                )

                coords = [*odd.coords, *([odd.fresh] if odd.fresh is not None else [])]
                mismatch = None
                grid = _sample_points(coords, n + 1, points, rng)
                for q in grid:
                    inside = member(q, whole)
                    index = odd.index_of(q)
                    covered = index is not None and member(q, odd.leaf_at(index))
                    if inside != covered or inside != member(q, odd.residual(0)):
                        mismatch = q
                        break
                report.add(
                    "index-identity-points",
                    "(a2)",
                    CheckStatus.PASS if mismatch is None else CheckStatus.FAIL,
                    node=node,
                    witness={"m": m, "points": len(grid)}
                    if mismatch is None
                    else {"m": m, "point": point_to_json(mismatch)},
                )
    logger.info(report.summary())
    return report


# --- (♣) ------------------------------------------------------------------


def check_filter_shift(
    result: ShiftResult, members: int = 9, bound: int = 200, need: int = 3
) -> Report:
    """Images alpha_i[D_i] of certificate members meet in at least `need` points below `bound`.

    Every coordinate set k + 1 = 1..lambda is checked over all choices of the
    first `members` members of each delta_i.
    """
    names = ", ".join(d.name for d in result.delta)
    report = Report(suite="filter-shift", tree=f"shift({names})")
    images = [
        [(d.description, result.image(i, d, bound)) for d in result.delta[i].prefix(members)]
        for i in range(result.lam)
    ]
    for k in range(result.lam):
        for choice in itertools.product(*images[: k + 1]):
            common = set.intersection(*(image for _, image in choice))
            report.add(
                "filter-shift",
                "(♣)",
                CheckStatus.PASS if len(common) >= need else CheckStatus.FAIL,
                node=" & ".join(name for name, _ in choice),
                witness=sorted(common)[:need],
            )
    logger.info(report.summary())
    return report


# --- (*j0) and (♥) --------------------------------------------------------


def _rescale_grafts(tree: HybridFoliageTree) -> RescaleGrafts:
    grafts = getattr(tree, "grafts", None)
    if not isinstance(grafts, RescaleGrafts):
        raise ConfigError(f"{tree.description} is not a rescaled tree")
    return grafts


def check_rescale_heights(tree: HybridFoliageTree, depth: int, probe: int = 2) -> Report:
    """Every surviving host node sits at hybrid height alpha(h - 1) + 1 with its own leaf."""
    grafts = _rescale_grafts(tree)
    host = tree.host
    report = Report(suite="rescale-heights", tree=tree.description, depth=depth)
    frontier: list[NodePath] = [()]
    while frontier:
        v = frontier.pop(0)
        expected = grafts.hybrid_height(v)
        if expected >= depth:
            continue
        located = tree.locate(v)
        if located is None:
            report.add(
                "rescale-height",
                "(*j0)",
                CheckStatus.FAIL,
                node=format_path(v),
                detail="host node dropped by the hybrid",
            )
            continue
        if len(located) != expected or tree.label_of(located) != host_label(v):
            status = CheckStatus.FAIL
        else:
            status = status_of(equal(tree.leaf(located), host.leaf(v)))
        report.add(
            "rescale-height",
            "(*j0)",
            status,
            node=format_path(v),
            witness={"hybrid": format_path(located), "height": len(located)},
        )
        frontier.extend((*v, i) for i in range(probe + 1))
    logger.info(report.summary())
    return report


def _rises(
    tree: HybridFoliageTree, sample: Sample, depth: int, sons: int, search_cap: int
) -> tuple[RiseSet, RiseSet]:
    host_rise = rise(tree.host, sample.point, sample.nbhd, depth, sons=sons, search_cap=search_cap)
    hybrid_rise = rise(tree, sample.point, sample.nbhd, depth, sons=sons, search_cap=search_cap)
    return host_rise, hybrid_rise


def check_rise_transfer(
    tree: HybridFoliageTree,
    samples: Sequence[Sample],
    depth: int,
    *,
    sons: int = 32,
    search_cap: int = 256,
) -> Report:
    """alpha maps the host rise set into the rescaled one, below `depth`."""
    alpha = _rescale_grafts(tree).alpha
    report = Report(suite="rise-transfer", tree=tree.description, depth=depth)
    for sample in samples:
        host_rise, hybrid_rise = _rises(tree, sample, depth, sons, search_cap)
        moved = [alpha(n) for n in host_rise.sorted() if alpha(n) < depth]
        missing = [h for h in moved if h not in hybrid_rise.known]
        if not missing:
            status = CheckStatus.PASS
        elif all(h in hybrid_rise.undecided for h in missing):
            status = CheckStatus.UNDECIDED
        else:
            status = CheckStatus.FAIL
        report.add(
            "rise-transfer",
            "(♥)",
            status,
            node=str(sample.point),
            witness={
                "point": point_to_json(sample.point),
                "host": host_rise.sorted(),
                "hybrid": hybrid_rise.sorted(),
                "missing": missing,
            },
        )
    logger.info(report.summary())
    return report


# --- co-countable ---------------------------------------------------------


def cocountable_grafts(tree: object) -> CocountableGrafts | None:
    grafts = getattr(tree, "grafts", None)
    return grafts if isinstance(grafts, CocountableGrafts) else None


def _require_cocountable(tree: HybridFoliageTree) -> CocountableGrafts:
    grafts = cocountable_grafts(tree)
    if grafts is None:
        raise ConfigError(f"{tree.description} does not remove points")
    return grafts


def _telescope(grafts: CocountableGrafts, root: NodePath, steps: int) -> tuple[str, int | None]:
    """F_z - {p} against the branch pieces F_u_j - F_u_(j+1) and the rest F_u_J - {p}."""
    host = grafts.host
    graft = grafts.flattened(root)
    p = graft.point
    whole = Minus(host.leaf(root), (p,))
    for top in range(steps + 1):
        pieces: list[ClopenSet] = [
            Diff(host.leaf(graft.node(j)), host.leaf(graft.node(j + 1))) for j in range(top)
        ]
        pieces.append(Minus(host.leaf(graft.node(top)), (p,)))
        try:
            verdict = equal(whole, union_of(pieces))
        except PitreeError:
            return CheckStatus.FAIL, top
        if verdict != Decision.YES:
            return status_of(verdict), top
    return CheckStatus.PASS, None


def check_cocountable(tree: HybridFoliageTree, depth: int, probe: int = 2) -> Report:
    """Cut stages, odd/even placement of graft nodes, and leaves of the point-removed tree."""
    grafts = _require_cocountable(tree)
    host = tree.host
    cut = grafts.points
    report = Report(suite="cocountable", tree=tree.description, depth=depth)

    verdict = equal(tree.root_leaf, Minus(host.root_leaf, cut))
    report.add("root-minus-points", "(f3)", status_of(verdict), node="<>")

    for stage in grafts.stages:
        node = format_path(stage.root)
        leaf = host.leaf(stage.root)
        earlier = [q for q in cut[: stage.index] if member(q, leaf)]
        ok = member(stage.point, leaf) and not earlier
        report.add(
            "cut-stage",
            "(f3)",
            CheckStatus.PASS if ok else CheckStatus.FAIL,
            node=node,
            witness={"point": point_to_json(stage.point), "earlier": [str(q) for q in earlier]},
        )
        status, top = _telescope(grafts, stage.root, TELESCOPE_STEPS)
        report.add("telescope", "(f3)", status, node=node, witness={"steps": top})

        located = tree.locate(stage.root)
        even = located is not None and len(located) % 2 == 0
        report.add(
            "even-root",
            "(g4)",
            CheckStatus.PASS if even else CheckStatus.FAIL,
            node=node,
            witness=None if located is None else {"hybrid": format_path(located)},
        )
        if located is None or not even:
            continue
        for c in range(probe):
            son = (*located, c)
            label = tree.label_of(son)
            placed = label[0] == "host" and tree.locate(label[1]) == son
            below = tree.label_of((*son, 0))
            ok = placed and below[0] == "host" and len(son) % 2 == 1
            report.add(
                "odd-max-node",
                "(g4)",
                CheckStatus.PASS if ok else CheckStatus.FAIL,
                node=format_path(son),
                witness={"host": format_path(label[1]) if label[0] == "host" else None},
            )

    for path in (p for h in range(depth) for p in _paths(h, probe)):
        node = format_path(path)
        label = tree.label_of(path)
        leaf = tree.leaf(path)
        if label[0] != "host":
            report.add(
                "leaf-minus-points",
                "(g3)",
                CheckStatus.FAIL,
                node=node,
                detail="graft-only node in a point-removed tree",
            )
            continue
        verdict = equal(leaf, Minus(host.leaf(label[1]), cut))
        report.add(
            "leaf-minus-points",
            "(g3)",
            status_of(verdict),
            node=node,
            witness={"host": format_path(label[1])},
        )
        report.add("nonempty", "(g1)", status_of(_negate(is_empty(leaf))), node=node)
        kept = [str(q) for q in cut if member(q, leaf)]
        report.add(
            "avoids-points",
            "(g3)",
            CheckStatus.FAIL if kept else CheckStatus.PASS,
            node=node,
            witness=kept or None,
        )
    logger.info(report.summary())
    return report


def _odd_tail(rise_set: RiseSet) -> int | None:
    """Least odd m with every odd height in [m, depth) known, None if the last one is not."""
    odd = [h for h in range(1, rise_set.depth, 2)]
    start = None
    for h in reversed(odd):
        if h not in rise_set.known:
            break
        start = h
    return start


def check_odd_transfer(
    tree: HybridFoliageTree,
    samples: Sequence[Sample],
    depth: int,
    *,
    sons: int = 32,
    search_cap: int = 256,
) -> Report:
    """An odd-height node whose host shoot refines U has its hybrid shoot inside U - A."""
    cut = _require_cocountable(tree).points
    report = Report(suite="odd-transfer", tree=tree.description, depth=depth)
    for sample in samples:
        p, target = sample.point, sample.nbhd
        try:
            nodes = scope(tree, p, depth, sons=sons, search_cap=search_cap)
            heights = {
                h: len(tree.label_of(nodes[h])[1]) for h in range(1, depth, 2)
            }
            host_depth = max(heights.values(), default=0) + 1
            host_rise = rise(tree.host, p, target, host_depth, sons=sons, search_cap=search_cap)
            hybrid_rise = rise(
                tree, p, Minus(target, cut), depth, sons=sons, search_cap=search_cap
            )
        except PitreeError as err:
            report.add("odd-transfer", "(♦)", CheckStatus.FAIL, node=str(p), detail=str(err))
            continue
        promised = [h for h, fh in heights.items() if fh in host_rise.known]
        missing = [h for h in promised if h not in hybrid_rise.known]
        if not missing:
            status = CheckStatus.PASS
        elif all(h in hybrid_rise.undecided for h in missing):
            status = CheckStatus.UNDECIDED
        else:
            status = CheckStatus.FAIL
        report.add(
            "odd-transfer",
            "(♦)",
            status,
            node=str(p),
            witness={
                "point": point_to_json(p),
                "host_heights": {str(h): fh for h, fh in heights.items()},
                "promised": promised,
                "hybrid": hybrid_rise.sorted(),
            },
        )
    logger.info(report.summary())
    return report


def _promised_odd_start(
    tree: HybridFoliageTree, sample: Sample, depth: int, sons: int, search_cap: int
) -> int | None:
    """Least odd height whose host node lies at or past the host rise tail."""
    nodes = scope(tree, sample.point, depth, sons=sons, search_cap=search_cap)
    heights = {h: len(tree.label_of(nodes[h])[1]) for h in range(1, depth, 2)}
    host_depth = max(heights.values(), default=0) + 1
    host_rise = rise(
        tree.host, sample.point, sample.nbhd, host_depth, sons=sons, search_cap=search_cap
    )
    tail = host_rise.tail_start()
    if tail is None:
        return None
    return min((h for h, fh in heights.items() if fh >= tail), default=None)


def check_odd_tail(
    tree: HybridFoliageTree,
    samples: Sequence[Sample],
    depth: int,
    *,
    bound: int | None = None,
    sons: int = 32,
    search_cap: int = 256,
) -> Report:
    """Every sampled rise set contains the odd heights from some point up to `depth`.

    Odd heights in [bound, depth) must all rise. Without an explicit `bound`
    it is the first odd height whose host node sits in the host rise tail.
    """
    cut = _require_cocountable(tree).points
    report = Report(suite="odd-tail", tree=tree.description, depth=depth)
    for sample in samples:
        try:
            rise_set = rise(
                tree, sample.point, Minus(sample.nbhd, cut), depth, sons=sons, search_cap=search_cap
            )
            window = bound
            if window is None:
                window = _promised_odd_start(tree, sample, depth, sons, search_cap)
        except PitreeError as err:
            node = str(sample.point)
            report.add("odd-tail", "(♠)", CheckStatus.FAIL, node=node, detail=str(err))
            continue
        start = _odd_tail(rise_set)
        missing: list[int] = []
        detail: str | None
        if window is not None:
            missing = [
                h for h in range(1, depth, 2) if h >= window and h not in rise_set.known
            ]
        if missing and not all(h in rise_set.undecided for h in missing):
            status, detail = CheckStatus.FAIL, f"odd heights {missing} do not rise"
        elif missing or start is None:
            status, detail = CheckStatus.UNDECIDED, f"no odd tail below depth {depth}"
        else:
            status, detail = CheckStatus.PASS, None
        report.add(
            "odd-tail",
            "(♠)",
            status,
            node=str(sample.point),
            witness={"start": start, "bound": window, "known": rise_set.sorted()},
            detail=detail,
        )
    logger.info(report.summary())
    return report
