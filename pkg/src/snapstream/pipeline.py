"""Declarative pipelines: JSONL input records and JSON stage configs.

A config looks like::

    {"base": "bag", "kind": "ev",
     "stages": [{"op": "window_time", "size": 10},
                {"op": "slide", "period": 5, "anchor": 0}]}

Stage names are the operator names of the library.  Functions and predicates
are picked from a small named vocabulary (:data:`FUNCTIONS`,
:func:`make_predicate`, :data:`AGGREGATES`) because JSON cannot carry code.
"""

from __future__ import annotations

import json
import operator
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator

from . import patterns, windows
from .base import BAG, BASES, IDENTITY, MAYBE, BaseMonad, base_by_name
from .errors import ContractViolation
from .jsonio import freeze
from .kinds import StreamKind
from .partition import distribute, partition_with
from .stream import (
    Stream, Tagged, cross, disjoint_union, map_snapshot, map_stream, now_window,
    sel_elem, sel_time, union_stream,
)
from .time import BiDomain, BiTime, FiniteDomain, periodic


class ConfigError(ValueError):
    """Malformed pipeline configuration."""


class InputError(ValueError):
    """Malformed input record."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


RECORD_FIELDS = {"t", "value", "arrival", "key", "tag"}


@dataclass(frozen=True)
class Event:
    t: int
    value: Any
    arrival: int | None = None
    key: Any = None
    tag: str | None = None
    line: int = 0

    @property
    def payload(self) -> Any:
        p = self.value if self.key is None else (self.key, self.value)
        return p if self.tag is None else Tagged(self.tag, p)


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def read_events(lines: Iterable[str]) -> list[Event]:
    out = []
    for n, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            rec = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise InputError(n, f"invalid JSON: {exc.msg}") from None
        if not isinstance(rec, dict):
            raise InputError(n, "record must be a JSON object")
        unknown = set(rec) - RECORD_FIELDS
        if unknown:
            raise InputError(n, f"unknown fields {sorted(unknown)}")
        if "t" not in rec or "value" not in rec:
            raise InputError(n, "record needs 't' and 'value'")
        if not _is_int(rec["t"]):
            raise InputError(n, "'t' must be an integer")
        if "arrival" in rec and not _is_int(rec["arrival"]):
            raise InputError(n, "'arrival' must be an integer")
        if "key" in rec and not isinstance(rec["key"], str):
            raise InputError(n, "'key' must be a string")
        if "tag" in rec and not isinstance(rec["tag"], str):
            raise InputError(n, "'tag' must be a string")
        out.append(Event(rec["t"], freeze(rec["value"]), rec.get("arrival"),
                         rec.get("key"), rec.get("tag"), n))
    stamped = {e.arrival is not None for e in out}
    if len(stamped) > 1:
        first = next(e for e in out if (e.arrival is None) != (out[0].arrival is None))
        raise InputError(first.line, "either all records carry 'arrival' or none do")
    return out


def source_stream(events: list[Event], base: BaseMonad, domain: FiniteDomain) -> Stream:
    """Group records into containers; bitemporal if records carry arrival times."""
    bitemporal = bool(events) and events[0].arrival is not None
    grouped: dict[Any, list[Any]] = {}
    if bitemporal:
        last_arrival = max([domain.last] + [e.arrival for e in events])
        first_arrival = min([domain.first] + [e.arrival for e in events])
        dom = BiDomain(domain, FiniteDomain(first_arrival, last_arrival))
        for e in events:
            if e.t in domain:
                grouped.setdefault(BiTime(e.t, e.arrival), []).append(e.payload)
    else:
        dom = domain
        for e in events:
            if e.t in domain:
                grouped.setdefault(e.t, []).append(e.payload)
    table = {t: base.of(xs) if base is not IDENTITY else _identity_of(xs, t)
             for t, xs in grouped.items()}
    return Stream.from_table(base, table, dom, name="source")


def _identity_of(xs: list, t) -> Any:
    if len(xs) != 1:
        raise ContractViolation(f"identity stream needs exactly one value at t={t}, got {len(xs)}")
    return IDENTITY.unit(xs[0])


# function vocabulary


def _lift_on(fn: Callable, on: str | None) -> Callable:
    if on is None:
        return fn
    if on == "value":
        return lambda kv: (kv[0], fn(kv[1]))
    if on == "key":
        return lambda kv: (fn(kv[0]), kv[1])
    if on == "payload":
        return lambda tg: Tagged(tg.tag, fn(tg.payload))
    raise ConfigError(f"unknown 'on' target {on!r}")


FUNCTIONS: dict[str, Callable[[Any], Callable[[Any], Any]]] = {
    "identity": lambda arg: lambda x: x,
    "add": lambda arg: lambda x: x + arg,
    "mul": lambda arg: lambda x: x * arg,
    "neg": lambda arg: lambda x: -x,
    "const": lambda arg: lambda x: freeze(arg),
    "field": lambda arg: lambda x: x[arg],
    "key": lambda arg: lambda kv: kv[0],
    "value": lambda arg: lambda kv: kv[1],
    "payload": lambda arg: lambda tg: tg.payload,
    "tag": lambda arg: lambda x: Tagged(arg, x),
    "pair_with": lambda arg: lambda x: (freeze(arg), x),
}

_COMPARE = {"gt": operator.gt, "ge": operator.ge, "lt": operator.lt,
            "le": operator.le, "eq": operator.eq, "ne": operator.ne}


def make_function(stage: dict) -> Callable[[Any], Any]:
    name = stage.get("fn")
    if name not in FUNCTIONS:
        raise ConfigError(f"unknown function {name!r}; expected one of {sorted(FUNCTIONS)}")
    return _lift_on(FUNCTIONS[name](stage.get("arg")), stage.get("on"))


def make_predicate(stage: dict) -> Callable[[Any], bool]:
    name = stage.get("pred")
    value = freeze(stage.get("value"))
    if name == "tag":
        return lambda x: isinstance(x, Tagged) and x.tag == value
    if name not in _COMPARE:
        raise ConfigError(f"unknown predicate {name!r}; expected tag or one of {sorted(_COMPARE)}")
    cmp = _COMPARE[name]
    on = stage.get("on")
    get = {None: lambda x: x, "key": lambda kv: kv[0], "value": lambda kv: kv[1],
           "payload": lambda tg: tg.payload}.get(on)
    if get is None:
        raise ConfigError(f"unknown 'on' target {on!r}")
    return lambda x: cmp(get(x), value)


def make_time_predicate(stage: dict, base: BaseMonad) -> Callable[[Any], bool]:
    name = stage.get("pred")
    n = stage.get("value", 1)

    def size(c):
        return sum(1 for _ in base.elements(c))

    if name == "count_ge":
        return lambda c: size(c) >= n
    if name == "count_le":
        return lambda c: size(c) <= n
    if name == "nonempty":
        return lambda c: not base.is_neutral(c)
    raise ConfigError(f"unknown instant predicate {name!r}")


AGGREGATES: dict[str, Callable[[list], Any]] = {
    "count": len,
    "sum": sum,
    "min": min,
    "max": max,
    "mean": lambda xs: sum(xs) / len(xs),
}


# stages


def _need(stage: dict, key: str, kind: type = int) -> Any:
    if key not in stage:
        raise ConfigError(f"stage {stage.get('op')!r} needs {key!r}")
    v = stage[key]
    if kind is int and not _is_int(v):
        raise ConfigError(f"stage {stage.get('op')!r}: {key!r} must be an integer")
    if kind is int and v < 1 and key in ("size", "n", "period"):
        raise ConfigError(f"stage {stage.get('op')!r}: {key!r} must be >= 1")
    return v


@dataclass
class Context:
    source: Stream
    policy: str = "skip"


def validate_stages(stages: Any) -> None:
    """Check stage names recursively before anything is evaluated."""
    if not isinstance(stages, list):
        raise ConfigError("'stages' must be a list")
    for stage in stages:
        if not isinstance(stage, dict) or "op" not in stage:
            raise ConfigError(f"stage must be an object with 'op': {stage!r}")
        if stage["op"] not in STAGES:
            raise ConfigError(f"unknown stage {stage['op']!r}; expected one of {sorted(STAGES)}")
        for nested in ("stages", "with"):
            if nested in stage:
                validate_stages(stage[nested])


def apply_stages(s: Stream, stages: list, ctx: Context) -> Stream:
    if not isinstance(stages, list):
        raise ConfigError("'stages' must be a list")
    for stage in stages:
        s = apply_stage(s, stage, ctx)
    return s


def apply_stage(s: Stream, stage: dict, ctx: Context) -> Stream:
    if not isinstance(stage, dict) or "op" not in stage:
        raise ConfigError(f"stage must be an object with 'op': {stage!r}")
    op = stage["op"]
    builder = STAGES.get(op)
    if builder is None:
        raise ConfigError(f"unknown stage {op!r}; expected one of {sorted(STAGES)}")
    return builder(s, stage, ctx)


def _aggregate(s, stage, ctx):
    name = stage.get("agg")
    if name not in AGGREGATES:
        raise ConfigError(f"unknown aggregate {name!r}; expected one of {sorted(AGGREGATES)}")
    agg = AGGREGATES[name]
    target = base_by_name(stage["base"]) if "base" in stage else s.base
    target.require_monoid("map_snapshot aggregate")
    src = s.base
    empty = target.empty()

    def g(c):
        xs = list(src.elements(c))
        return target.unit(agg(xs)) if xs else empty

    return map_snapshot(g, s, target)


def _resample(s, stage, ctx):
    size = _need(stage, "size")
    ref = windows.slide(periodic(_need(stage, "period"), stage.get("anchor", 0)),
                        Stream(BAG, s.domain, lambda t: BAG.unit(t), memo=False))
    return windows.resample(ref, size, s)


def _branch(s, stage, ctx):
    return apply_stages(ctx.source, stage.get("with", []), ctx)


def _split(x):
    if not (isinstance(x, tuple) and len(x) == 2):
        raise ContractViolation(f"keyed stage needs (key, value) payloads, got {x!r}")
    return x


def _keyed(fn):
    def build(s, stage, ctx):
        inner = stage.get("stages", [])
        validate_stages(inner)
        if fn is partition_with:
            return partition_with(_split, lambda sub: apply_stages(sub, inner, ctx), lambda kv: kv, s)
        return distribute(lambda sub: apply_stages(sub, inner, ctx), s)
    return build


STAGES: dict[str, Callable[[Stream, dict, Context], Stream]] = {
    "map_stream": lambda s, st, ctx: map_stream(make_function(st), s),
    "sel_elem": lambda s, st, ctx: sel_elem(make_predicate(st), s),
    "sel_time": lambda s, st, ctx: sel_time(make_time_predicate(st, s.base), s),
    "map_snapshot": _aggregate,
    "now_window": lambda s, st, ctx: now_window(s),
    "cross": lambda s, st, ctx: cross(s, _branch(s, st, ctx)),
    "union_stream": lambda s, st, ctx: union_stream(s, _branch(s, st, ctx)),
    "disjoint_union": lambda s, st, ctx: disjoint_union(
        s, _branch(s, st, ctx), st.get("left", "l"), st.get("right", "r")),
    "window_time": lambda s, st, ctx: windows.window_time(_need(st, "size"), s),
    "window_future": lambda s, st, ctx: windows.window_future(_need(st, "size"), s),
    "window_taa": lambda s, st, ctx: windows.window_taa(_need(st, "size"), s),
    "window_row": lambda s, st, ctx: windows.window_row(_need(st, "size"), s),
    "window_rowgen": lambda s, st, ctx: windows.window_rowgen(_need(st, "size"), s),
    "slide": lambda s, st, ctx: windows.slide(periodic(_need(st, "period"), st.get("anchor", 0)), s),
    "row_slide": lambda s, st, ctx: windows.row_slide(_need(st, "n"), s),
    "filter_late": lambda s, st, ctx: windows.filter_late(_need(st, "limit"), s),
    "as_of": lambda s, st, ctx: windows.as_of(_need(st, "arrival"), s),
    "resample": _resample,
    "match_pattern": lambda s, st, ctx: patterns.match_pattern(
        _parse(st), s, st.get("policy", ctx.policy)),
    "row_window_via_pattern": lambda s, st, ctx: patterns.row_window_via_pattern(_need(st, "size"), s),
    "partition_with": _keyed(partition_with),
    "distribute": _keyed(distribute),
}


def _parse(stage: dict) -> patterns.Pattern:
    text = stage.get("pattern")
    if not isinstance(text, str):
        raise ConfigError("match_pattern needs a 'pattern' string")
    try:
        return patterns.parse_pattern(text)
    except patterns.PatternSyntaxError as exc:
        raise ConfigError(str(exc)) from None


@dataclass
class Pipeline:
    base: BaseMonad
    kind: StreamKind
    stages: list

    @classmethod
    def from_json(cls, cfg: Any) -> "Pipeline":
        if not isinstance(cfg, dict):
            raise ConfigError("pipeline config must be a JSON object")
        unknown = set(cfg) - {"base", "kind", "stages"}
        if unknown:
            raise ConfigError(f"unknown config fields {sorted(unknown)}")
        if cfg.get("base") not in BASES:
            raise ConfigError(f"'base' must be one of {sorted(BASES)}")
        try:
            kind = StreamKind(cfg.get("kind", "ev"))
        except ValueError:
            raise ConfigError("'kind' must be one of ev, st, et") from None
        stages = cfg.get("stages", [])
        validate_stages(stages)
        return cls(BASES[cfg["base"]], kind, stages)

    def build(self, events: list[Event], domain: FiniteDomain, policy: str = "skip") -> Stream:
        src = source_stream(events, self.base, domain)
        return apply_stages(src, self.stages, Context(src, policy))


def output_records(s: Stream) -> Iterator[tuple[Any, Any]]:
    """``(t, container)`` for each non-empty instant, in tick order."""
    if s.base.has_monoid:
        yield from s.nonempty()
    else:
        yield from s.items()
