"""Streams as functions from time to base containers.

A :class:`Stream` is evaluated, never iterated: ``s(t)`` is the container of
everything valid at instant ``t``.  Operators in this module are
snapshot-reducible, i.e. the result at ``t`` only depends on the inputs at
``t``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping

from .base import BaseMonad
from .errors import ContractViolation


class Stream:
    """An evaluable mapping from the instants of ``domain`` to containers.

    ``fn`` must be total on the domain.  Results are memoized per tick; the
    computation is pure, so a concurrent double evaluation is harmless.
    """

    __slots__ = ("base", "domain", "_fn", "_memo", "name")

    def __init__(
        self,
        base: BaseMonad,
        domain,
        fn: Callable[[Any], Any],
        *,
        memo: bool = True,
        name: str | None = None,
    ) -> None:
        self.base = base
        self.domain = domain
        self._fn = fn
        self._memo: dict | None = {} if memo else None
        self.name = name

    @classmethod
    def from_table(
        cls,
        base: BaseMonad,
        table: Mapping[Any, Any],
        domain,
        *,
        name: str | None = None,
    ) -> "Stream":
        """Table-backed stream; ticks missing from ``table`` read as ``empty()``.

        For a base without monoid every tick of the domain must be present.
        """
        table = dict(table)
        if not base.has_monoid:
            missing = [t for t in domain if t not in table]
            if missing:
                raise ContractViolation(
                    f"{base.name} stream table must cover every tick; missing {missing[:5]}"
                )
            return cls(base, domain, table.__getitem__, memo=False, name=name)
        empty = base.empty()
        return cls(base, domain, lambda t: table.get(t, empty), memo=False, name=name)

    @classmethod
    def from_values(
        cls, base: BaseMonad, values: Mapping[Any, Iterable[Any]], domain, **kw
    ) -> "Stream":
        """Like :meth:`from_table` but each entry is a plain iterable of payloads."""
        return cls.from_table(base, {t: base.of(xs) for t, xs in values.items()}, domain, **kw)

    @classmethod
    def empty(cls, base: BaseMonad, domain) -> "Stream":
        base.require_monoid("empty stream")
        e = base.empty()
        return cls(base, domain, lambda t: e, memo=False, name="empty")

    def eval(self, t):
        memo = self._memo
        if memo is None:
            return self._fn(t)
        try:
            return memo[t]
        except KeyError:
            v = memo[t] = self._fn(t)
            return v

    __call__ = eval

    def snapshot(self) -> Callable[[Any], Any]:
        """The snapshot function of the reference model is evaluation itself."""
        return self.eval

    def items(self) -> Iterator[tuple[Any, Any]]:
        for t in self.domain:
            yield t, self.eval(t)

    def nonempty(self) -> Iterator[tuple[Any, Any]]:
        """``(t, container)`` for every tick whose container is not neutral."""
        is_neutral = self.base.is_neutral
        for t, c in self.items():
            if not is_neutral(c):
                yield t, c

    def to_table(self) -> dict:
        return dict(self.nonempty()) if self.base.has_monoid else dict(self.items())

    def __repr__(self) -> str:
        label = self.name or "stream"
        return f"<{label} {self.base.name} over {self.domain}>"


def at(s, t):
    """Evaluate a stream or any snapshot function at ``t``."""
    return s(t)


def first_difference(a: Stream, b: Stream, domain=None):
    """First tick where ``a`` and ``b`` disagree, or ``None``."""
    domain = a.domain if domain is None else domain
    equal = a.base.equal
    for t in domain:
        if not equal(a(t), b(t)):
            return t
    return None


def streams_equal(a: Stream, b: Stream, domain=None) -> bool:
    """Extensional equality over ``domain`` (default: ``a``'s domain)."""
    return first_difference(a, b, domain) is None


def _same_domain(*streams: Stream):
    dom = streams[0].domain
    for s in streams[1:]:
        if s.domain != dom:
            raise ContractViolation(f"domains differ: {dom} vs {s.domain}")
        if s.base is not streams[0].base:
            raise ContractViolation(
                f"bases differ: {streams[0].base.name} vs {s.base.name}"
            )
    return dom


# stream monad


def map_stream(f: Callable[[Any], Any], s: Stream) -> Stream:
    b = s.base
    return Stream(b, s.domain, lambda t: b.map(f, s(t)), name="map")


def unit_stream(x: Any, base: BaseMonad, domain) -> Stream:
    c = base.unit(x)
    return Stream(base, domain, lambda t: c, memo=False, name="unit")


def flatten_stream(ss: Stream) -> Stream:
    """Evaluate the outer container at ``t`` and every inner stream at the same ``t``."""
    b = ss.base

    def fn(t):
        return b.flatten(b.map(lambda inner: inner(t), ss(t)))

    return Stream(b, ss.domain, fn, name="flatten")


# snapshot monad


def map_snapshot(g: Callable[[Any], Any], s: Stream, base: BaseMonad | None = None) -> Stream:
    """Apply a per-instant function to whole containers, possibly changing the base."""
    return Stream(base or s.base, s.domain, lambda t: g(s(t)), name="map_snapshot")


def unit_snapshot(c: Any, base: BaseMonad, domain) -> Stream:
    """Constant stream; lifts a static relation into time."""
    return Stream(base, domain, lambda t: c, memo=False, name="unit_snapshot")


def flatten_snapshot(ss, base: BaseMonad | None = None, domain=None) -> Stream:
    """``t -> ss(t)(t)``: apply the same instant to both layers."""
    base = base or ss.base
    domain = ss.domain if domain is None else domain
    return Stream(base, domain, lambda t: ss(t)(t), name="flatten_snapshot")


# snapshot-reducible operators


def sel_elem(p: Callable[[Any], bool], s: Stream) -> Stream:
    """Keep payloads satisfying ``p`` at every instant."""
    b = s.base
    b.require_monoid("sel_elem")
    return Stream(b, s.domain, lambda t: b.filter(p, s(t)), name="sel_elem")


def sel_time(q: Callable[[Any], bool], s: Stream) -> Stream:
    """Keep the whole container at instants where ``q`` holds on it."""
    b = s.base
    b.require_monoid("sel_time")
    empty = b.empty()

    def fn(t):
        c = s(t)
        return c if q(c) else empty

    return Stream(b, s.domain, fn, name="sel_time")


def cross(s1: Stream, s2: Stream) -> Stream:
    dom = _same_domain(s1, s2)
    b = s1.base
    return Stream(b, dom, lambda t: b.cross(s1(t), s2(t)), name="cross")


def union_stream(s1: Stream, s2: Stream) -> Stream:
    dom = _same_domain(s1, s2)
    b = s1.base
    b.require_monoid("union_stream")
    return Stream(b, dom, lambda t: b.combine(s1(t), s2(t)), name="union")


@dataclass(frozen=True)
class Tagged:
    """A payload injected into a sum type under ``tag``."""

    tag: Hashable
    payload: Any

    def __repr__(self) -> str:
        return f"{self.tag}({self.payload!r})"


IN_L = "l"
IN_R = "r"


def tagged(tag: Hashable, s: Stream) -> Stream:
    return map_stream(lambda x: Tagged(tag, x), s)


def disjoint_union(s1: Stream, s2: Stream, left: Hashable = IN_L, right: Hashable = IN_R) -> Stream:
    """Tag left payloads ``left`` and right payloads ``right``, then union."""
    if left == right:
        raise ValueError("disjoint union needs two distinct tags")
    s1.base.require_monoid("disjoint_union")
    return union_stream(tagged(left, s1), tagged(right, s2))


def now_window(s: Stream) -> Stream:
    """Per-instant identity window."""
    return Stream(s.base, s.domain, s.eval, memo=False, name="now")
