"""Physical stream representations and operators derived from them.

A representation is usable once it provides ``snapshot`` (table, t -> Bag)
and ``reconstruct`` (function, domain -> table) with
``snapshot(reconstruct(f), t) == f(t)``.  :func:`derive_monadic` then builds
``map``/``unit``/``flatten`` for it by routing every step through those two
functions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Iterable, NamedTuple

from . import kernels
from .base import BAG, Bag
from .errors import RepresentationError
from .time import FiniteDomain, TimeInterval, TimePoint


@dataclass(frozen=True)
class EventTable:
    """Logical stream: triples ``(payload, multiplicity, t)``.

    Build with :meth:`of` to merge duplicates and sort by time; within a tick
    payloads keep first-insertion order.
    """

    triples: tuple[tuple[Any, int, TimePoint], ...] = ()

    @classmethod
    def of(cls, triples: Iterable[tuple[Any, int, TimePoint]]) -> "EventTable":
        merged: dict[tuple[TimePoint, Any], int] = {}
        for e, n, t in triples:
            if n < 0:
                raise ValueError(f"negative multiplicity in triple {(e, n, t)!r}")
            if n:
                merged[(t, e)] = merged.get((t, e), 0) + n
        order = {k: i for i, k in enumerate(merged)}
        keys = sorted(merged, key=lambda k: (k[0], order[k]))
        return cls(tuple((e, merged[(t, e)], t) for t, e in keys))

    @cached_property
    def _by_time(self) -> dict[TimePoint, Bag]:
        acc: dict[TimePoint, dict[Any, int]] = {}
        for e, n, t in self.triples:
            d = acc.setdefault(t, {})
            d[e] = d.get(e, 0) + n
        return {t: Bag.from_counts(d) for t, d in acc.items()}

    def __len__(self) -> int:
        return len(self.triples)


def snapshot_events(et: EventTable, t: TimePoint) -> Bag:
    return et._by_time.get(t, BAG.empty())


def reconstruct_events(f: Callable[[TimePoint], Bag], dom: FiniteDomain) -> EventTable:
    return EventTable(tuple((e, n, t) for t in dom for e, n in f(t).items()))


@dataclass(frozen=True, eq=False)
class IntervalTable:
    """Physical stream: a bag of ``(payload, validity interval)`` pairs.

    Equality (and hashing) goes through :attr:`normal_form`, so differently
    split tables with the same snapshots compare equal.  Multiplicity at ``t``
    is the number of pairs whose interval covers ``t``.
    """

    pairs: tuple[tuple[Any, TimeInterval], ...] = ()

    @cached_property
    def normal_form(self) -> tuple[tuple[Any, TimeInterval], ...]:
        spans: dict[Any, list[TimeInterval]] = {}
        for e, iv in self.pairs:
            if not iv.is_empty:
                spans.setdefault(e, []).append(iv)
        out = []
        for e, ivs in spans.items():
            lo = min(iv.lo for iv in ivs)
            hi = max(iv.hi for iv in ivs)
            diff = [0] * (hi - lo + 2)
            for iv in ivs:
                diff[iv.lo - lo] += 1
                diff[iv.hi - lo + 1] -= 1
            counts = []
            run = 0
            for d in diff[:-1]:
                run += d
                counts.append(run)
            out.extend((e, TimeInterval(lo + a, lo + b)) for a, b in kernels.layer_runs(counts))
        out.sort(key=lambda p: (p[1].lo, p[1].hi, repr(p[0])))
        return tuple(out)

    @cached_property
    def _index(self) -> list[tuple[TimePoint, TimePoint, Any]]:
        return sorted(((iv.lo, iv.hi, e) for e, iv in self.pairs if not iv.is_empty),
                      key=lambda r: (r[0], r[1]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalTable):
            return NotImplemented
        return _nf_key(self) == _nf_key(other)

    def __hash__(self) -> int:
        return hash(frozenset(_nf_key(self).items()))

    def __len__(self) -> int:
        return len(self.pairs)


def _nf_key(it: IntervalTable) -> dict:
    acc: dict = {}
    for p in it.normal_form:
        acc[p] = acc.get(p, 0) + 1
    return acc


def snapshot_intervals(it: IntervalTable, t: TimePoint) -> Bag:
    acc: dict[Any, int] = {}
    for lo, hi, e in it._index:
        if lo > t:
            break
        if t <= hi:
            acc[e] = acc.get(e, 0) + 1
    return Bag.from_counts(acc)


def reconstruct_intervals(f: Callable[[TimePoint], Bag], dom: FiniteDomain) -> IntervalTable:
    """One maximal interval per contiguous run of presence, per multiplicity layer."""
    width = len(dom)
    counts: dict[Any, list[int]] = {}
    for i, t in enumerate(dom):
        for e, n in f(t).items():
            row = counts.get(e)
            if row is None:
                row = counts[e] = [0] * width
            row[i] = n
    pairs = []
    for e, row in counts.items():
        for a, b in kernels.layer_runs(row):
            pairs.append((e, TimeInterval(dom.first + a, dom.first + b)))
    pairs.sort(key=lambda p: (p[1].lo, p[1].hi))
    return IntervalTable(tuple(pairs))


class Representation(NamedTuple):
    name: str
    snapshot: Callable[[Any, TimePoint], Bag]
    reconstruct: Callable[[Callable[[TimePoint], Bag], FiniteDomain], Any]


EVENTS = Representation("events", snapshot_events, reconstruct_events)
INTERVALS = Representation("intervals", snapshot_intervals, reconstruct_intervals)


def right_inverse_failure(snapshot, reconstruct, f, dom: FiniteDomain):
    """First tick where ``snapshot(reconstruct(f))`` differs from ``f``, else ``None``."""
    table = reconstruct(f, dom)
    for t in dom:
        if snapshot(table, t) != f(t):
            return t
    return None


def probe_functions(dom: FiniteDomain, count: int = 8, seed: int = 0) -> list[Callable]:
    """Small deterministic set of bag-valued functions used to vet a representation."""
    rng = random.Random(seed)
    probes = [lambda t: BAG.empty(), lambda t: BAG.unit("p")]
    for _ in range(count):
        table = {
            t: Bag.from_counts({x: rng.randint(0, 2) for x in "pqr"})
            for t in dom
            if rng.random() < 0.7
        }
        probes.append(lambda t, table=table: table.get(t, BAG.empty()))
    return probes


@dataclass
class DerivedOps:
    """Monadic operators on a physical representation."""

    representation: Representation
    domain: FiniteDomain
    verify: bool = True
    _snapshot: Callable = field(init=False, repr=False)
    _reconstruct: Callable = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._snapshot = self.representation.snapshot
        self._reconstruct = self.representation.reconstruct

    def _build(self, f: Callable[[TimePoint], Bag]):
        table = self._reconstruct(f, self.domain)
        if self.verify:
            for t in self.domain:
                if self._snapshot(table, t) != f(t):
                    raise RepresentationError(
                        f"{self.representation.name}: reconstruct is not a right inverse at t={t}",
                        tick=t,
                    )
        return table

    def map(self, fn: Callable[[Any], Any], s):
        snap = self._snapshot
        return self._build(lambda t: BAG.map(fn, snap(s, t)))

    def unit(self, x: Any):
        return self._build(lambda t: BAG.unit(x))

    def flatten(self, ss):
        snap = self._snapshot
        return self._build(lambda t: BAG.flatten(BAG.map(lambda inner: snap(inner, t), snap(ss, t))))

    def snapshot(self, s, t: TimePoint) -> Bag:
        return self._snapshot(s, t)


def derive_monadic(
    representation: Representation | tuple,
    domain: FiniteDomain,
    *,
    probes: Iterable[Callable] | None = None,
    verify: bool = True,
) -> DerivedOps:
    """Derive map/unit/flatten from a snapshot/reconstruct pair.

    The right-inverse law is checked on ``probes`` (default
    :func:`probe_functions`) before anything is returned; with ``verify`` every
    table built afterwards is checked as well.
    """
    if not isinstance(representation, Representation):
        snap, rec = representation
        representation = Representation(getattr(rec, "__name__", "custom"), snap, rec)
    for f in probes if probes is not None else probe_functions(domain):
        t = right_inverse_failure(representation.snapshot, representation.reconstruct, f, domain)
        if t is not None:
            raise RepresentationError(
                f"{representation.name}: snapshot . reconstruct != id at t={t}", tick=t
            )
    return DerivedOps(representation, domain, verify)
