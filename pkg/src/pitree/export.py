"""Materialize a lazy tree to a depth and export it as JSON lines or DOT.

Son families are truncated at N sons; the remaining sons of every expanded
node are summarized by one "rest" record carrying residual(N).
"""

import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from typing import Any, Literal

from pydantic import BaseModel, Field, ValidationError

from .core.paths import NodePath, format_path
from .core.tree import FoliageTree
from .errors import SerializationError
from .symsets import ClopenSet, dumps, from_json, to_json

logger = logging.getLogger(__name__)


class ExportFormat:
    """Output formats of `build`."""

    JSONL = "jsonl"
    DOT = "dot"

    # All valid formats
    ALL = (JSONL, DOT)


class NodeRecord(BaseModel):
    """One line of a JSON-lines export."""

    kind: Literal["node", "rest"] = "node"
    path: list[int] = Field(..., description="Node path; for rest records the parent's path")
    height: int
    leaf: dict[str, Any] = Field(..., description="Leaf (ClopenSet JSON)")
    start: int | None = Field(None, description="First son summarized by a rest record")

    model_config = {"extra": "ignore"}


def _by_height(path: NodePath) -> tuple[int, NodePath]:
    return len(path), path


@dataclass
class TruncatedTree:
    """Finite truncation: leaves of the exported nodes and the residual of every cut family."""

    nodes: dict[NodePath, ClopenSet] = field(default_factory=dict)
    rests: dict[NodePath, tuple[int, ClopenSet]] = field(default_factory=dict)

    def records(self) -> Iterator[NodeRecord]:
        for path in sorted(self.nodes, key=_by_height):
            yield NodeRecord(path=list(path), height=len(path), leaf=to_json(self.nodes[path]))
            if path in self.rests:
                start, rest = self.rests[path]
                yield NodeRecord(
                    kind="rest",
                    path=list(path),
                    height=len(path) + 1,
                    leaf=to_json(rest),
                    start=start,
                )


def materialize(tree: FoliageTree, depth: int, sons: int) -> TruncatedTree:
    """Nodes of height < depth whose entries are < sons."""
    truncated = TruncatedTree()
    frontier: list[NodePath] = [()]
    truncated.nodes[()] = tree.root_leaf
    for height in range(1, depth):
        next_frontier: list[NodePath] = []
        for path in frontier:
            family = tree.sons_of(path)
            count = sons if family.size is None else min(sons, family.size)
            for i in range(count):
                son = (*path, i)
                truncated.nodes[son] = family.leaf_at(i)
                next_frontier.append(son)
            if family.size is None or family.size > sons:
                truncated.rests[path] = (count, family.residual(count))
        frontier = next_frontier
        logger.debug("Materialized height %d of %s", height, tree.description)
    return truncated


def to_jsonl(truncated: TruncatedTree) -> str:
    lines = [dumps(r.model_dump(mode="json", exclude_none=True)) for r in truncated.records()]
    return "\n".join(lines) + "\n"


def from_jsonl(lines: Iterable[str]) -> TruncatedTree:
    """Reload a JSON-lines export."""
    truncated = TruncatedTree()
    for number, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            record = NodeRecord.model_validate_json(line)
        except ValidationError as err:
            raise SerializationError(f"Line {number}: {err}") from err
        leaf = from_json(record.leaf)
        if record.kind == "rest":
            if record.start is None:
                raise SerializationError(f"Line {number}: rest record without a start")
            truncated.rests[tuple(record.path)] = (record.start, leaf)
        else:
            truncated.nodes[tuple(record.path)] = leaf
    return truncated


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(truncated: TruncatedTree, name: str = "pitree") -> str:
    """Tree edges with leaf labels; an ellipsis node per cut family carries its residual."""
    ordered = sorted(truncated.nodes, key=_by_height)
    ids = {path: f"n{i}" for i, path in enumerate(ordered)}
    lines = [f"digraph {_quote(name)} {{", "  node [shape=box, fontsize=10];"]
    for path, node_id in ids.items():
        label = f"{format_path(path)}\\n{dumps(to_json(truncated.nodes[path]))}"
        lines.append(f"  {node_id} [label={_quote(label)}];")
        if path:
            lines.append(f"  {ids[path[:-1]]} -> {node_id};")
    for path, (start, rest) in sorted(truncated.rests.items(), key=lambda kv: _by_height(kv[0])):
        rest_id = f"{ids[path]}_rest"
        label = f"... sons >= {start}\\n{dumps(to_json(rest))}"
        lines.append(f"  {rest_id} [label={_quote(label)}, style=dashed];")
        lines.append(f"  {ids[path]} -> {rest_id} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_tree(tree: FoliageTree, depth: int, sons: int, fmt: str = ExportFormat.JSONL) -> str:
    truncated = materialize(tree, depth, sons)
    logger.info("Exporting %d nodes of %s as %s", len(truncated.nodes), tree.description, fmt)
    if fmt == ExportFormat.DOT:
        return to_dot(truncated, tree.description)
    return to_jsonl(truncated)
