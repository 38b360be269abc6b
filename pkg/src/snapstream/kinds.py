"""Stream kinds: event (``ev``), state (``st``) and eternal/static (``et``).

Kinds form a join semi-lattice in which ``et`` is neutral and ``ev``
absorbing; that induces the order ``et <= st <= ev`` with join as maximum.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping


class StreamKind(enum.Enum):
    ET = "et"
    ST = "st"
    EV = "ev"

    @property
    def rank(self) -> int:
        return _RANK[self]

    def join(self, other: "StreamKind") -> "StreamKind":
        return join_kind(self, other)

    def __le__(self, other: "StreamKind") -> bool:
        return self.rank <= other.rank

    def __lt__(self, other: "StreamKind") -> bool:
        return self.rank < other.rank


_RANK = {StreamKind.ET: 0, StreamKind.ST: 1, StreamKind.EV: 2}

EV, ST, ET = StreamKind.EV, StreamKind.ST, StreamKind.ET


def join_kind(a: StreamKind, b: StreamKind) -> StreamKind:
    return a if a.rank >= b.rank else b


#: operators whose output at t depends only on inputs at t (plus time filters)
SNAPSHOT_REDUCIBLE = frozenset({
    "map_stream", "map_snapshot", "sel_elem", "sel_time", "cross",
    "union_stream", "disjoint_union", "now_window", "flatten_stream",
    "slide", "row_slide", "filter_late", "as_of",
})

#: keyed wrappers; their kind is that of the per-key operator chain
KEYED_OPERATORS = frozenset({"partition_with", "distribute"})

#: operators that collect data over a span and so always yield state streams
SPAN_OPERATORS = frozenset({
    "window_time", "window_future", "window_taa", "window_row", "window_rowgen",
    "match_pattern", "row_window_via_pattern", "resample", "bsort",
})


class UnannotatedSource(ValueError):
    pass


@dataclass(frozen=True)
class Node:
    """One operator in a pipeline DAG; sources carry their kind.

    Keyed nodes list the per-key operator chain in ``inner``.
    """

    op: str
    inputs: tuple[str, ...] = ()
    kind: StreamKind | None = None
    inner: tuple[str, ...] = ()


def chain_kind(op: str, kind: StreamKind) -> StreamKind:
    """Kind after applying unary ``op`` to a stream of ``kind``."""
    if op in SPAN_OPERATORS:
        return ST
    if op in SNAPSHOT_REDUCIBLE:
        return kind
    if op in KEYED_OPERATORS:
        return kind
    raise ValueError(f"unknown operator {op!r}")


def infer_kind(nodes: Mapping[str, Node]) -> dict[str, StreamKind]:
    """Kind of every node, propagated from annotated sources."""
    out: dict[str, StreamKind] = {}
    visiting: set[str] = set()

    def visit(name: str) -> StreamKind:
        if name in out:
            return out[name]
        if name in visiting:
            raise ValueError(f"cycle through {name!r}")
        try:
            node = nodes[name]
        except KeyError:
            raise ValueError(f"unknown node {name!r}") from None
        visiting.add(name)
        if node.op == "unit_snapshot":
            kind = ET
        elif node.op == "source":
            if node.kind is None:
                raise UnannotatedSource(f"source {name!r} has no kind")
            kind = StreamKind(node.kind)
        elif node.op in SPAN_OPERATORS:
            for i in node.inputs:
                visit(i)
            kind = ST
        elif node.op in SNAPSHOT_REDUCIBLE or node.op in KEYED_OPERATORS:
            if not node.inputs:
                raise ValueError(f"{node.op} node {name!r} has no inputs")
            kind = ET
            for i in node.inputs:
                kind = join_kind(kind, visit(i))
            for op in node.inner:
                kind = chain_kind(op, kind)
        else:
            raise ValueError(f"unknown operator {node.op!r} at {name!r}")
        visiting.discard(name)
        out[name] = kind
        return kind

    for name in nodes:
        visit(name)
    return out
