"""Arithmetic on nodes of the canonical skeleton (finite sequences of naturals)."""

NodePath = tuple[int, ...]

ROOT: NodePath = ()


def height(v: NodePath) -> int:
    return len(v)


def is_below(u: NodePath, v: NodePath) -> bool:
    """u < v: u is a strict prefix of v."""
    return len(u) < len(v) and v[: len(u)] == u


def parent(v: NodePath) -> NodePath:
    if not v:
        raise ValueError("The root has no parent")
    return v[:-1]


def son(v: NodePath, n: int) -> NodePath:
    return (*v, n)


def format_path(v: NodePath) -> str:
    return "<" + ",".join(str(x) for x in v) + ">"
