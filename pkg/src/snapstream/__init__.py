"""Streams as functions from time to a base container.

The stream monad lifts a per-instant container (bag, set, maybe, identity,
sequence) over a finite time domain. Windows, patterns and keyed operators
are built on it, and :mod:`snapstream.laws` checks the algebra they rely on.
"""

from types import ModuleType as _ModuleType

from .base import BAG, BASES, IDENTITY, MAYBE, NOTHING, SEQ, SET, Bag, BaseMonad, Identity, Seq, SetC, Some, base_by_name
from .errors import ContractViolation, KeyChangeError, NoMonoidError, RepresentationError, StreamError
from .kinds import ET, EV, ST, Node, StreamKind, infer_kind, join_kind
from .partition import distribute, partition_with
from .patterns import Policy, match_pattern, parse_pattern
from .physical import EventTable, IntervalTable, derive_monadic
from .stream import (
    Stream,
    Tagged,
    cross,
    disjoint_union,
    flatten_snapshot,
    flatten_stream,
    map_snapshot,
    map_stream,
    now_window,
    sel_elem,
    sel_time,
    union_stream,
    unit_snapshot,
    unit_stream,
)
from .time import BiDomain, BiTime, FiniteDomain, TimeInterval, interval
from .windows import (
    as_of,
    bsort,
    filter_late,
    resample,
    row_slide,
    slide,
    window_future,
    window_row,
    window_rowgen,
    window_taa,
    window_time,
)

__version__ = "0.1.0"

__all__ = sorted(n for n, v in globals().items() if not n.startswith("_") and not isinstance(v, _ModuleType))
