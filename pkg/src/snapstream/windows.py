"""Window operators and other order-aware transformations.

None of these are snapshot-reducible: the result at ``t`` looks at other
instants of the input.  Time windows use the trailing interval
``(t - size; t]``, future windows ``[t; t + size)``.  Ticks outside the
stream's domain contribute nothing.
"""

from __future__ import annotations

import threading
from typing import Any, Callable, Iterable, Sequence

from . import kernels
from .base import BAG, MAYBE, IDENTITY, Bag, BaseMonad
from .errors import ContractViolation, NoMonoidError
from .stream import Stream
from .time import BiDomain, FiniteDomain, TimePoint, periodic


def _require_size(size: int, what: str = "size") -> None:
    if size < 1:
        raise ValueError(f"{what} must be >= 1, got {size}")


def _require_timeline(s: Stream) -> FiniteDomain:
    if not isinstance(s.domain, FiniteDomain):
        raise ContractViolation("operator needs a one-dimensional FiniteDomain")
    return s.domain


def lazy_table(base: BaseMonad, domain: FiniteDomain, compute: Callable[[], dict], name: str) -> Stream:
    """Stream backed by a whole-domain table computed on first evaluation."""
    lock = threading.Lock()
    cache: list[dict] = []
    empty = base.empty() if base.has_monoid else None

    def fn(t):
        if not cache:
            with lock:
                if not cache:
                    cache.append(compute())
        return cache[0].get(t, empty)

    return Stream(base, domain, fn, memo=False, name=name)


def _span_combine(s: Stream, lo: TimePoint, hi: TimePoint):
    dom = s.domain
    b = s.base
    acc = b.empty()
    for u in range(max(lo, dom.first), min(hi, dom.last) + 1):
        acc = b.combine(acc, s(u))
    return acc


def window_time(size: int, s: Stream) -> Stream:
    """Combine of ``s(u)`` for ``u`` in ``(t - size; t]``."""
    _require_size(size)
    s.base.require_monoid("window_time")
    dom = _require_timeline(s)
    if s.base is BAG:
        def compute():
            ticks = [dict(s(t).items()) for t in dom]
            rows = kernels.sliding_bag_counts(ticks, size)
            return {t: Bag.from_counts(r) for t, r in zip(dom, rows) if r}

        return lazy_table(BAG, dom, compute, f"window_time({size})")
    return Stream(s.base, dom, lambda t: _span_combine(s, t - size + 1, t), name=f"window_time({size})")


def window_future(size: int, s: Stream) -> Stream:
    """Combine of ``s(u)`` for ``u`` in ``[t; t + size)``."""
    _require_size(size)
    s.base.require_monoid("window_future")
    dom = _require_timeline(s)
    if s.base is BAG:
        def compute():
            ticks = [dict(s(t).items()) for t in reversed(range(dom.first, dom.last + 1))]
            rows = kernels.sliding_bag_counts(ticks, size)
            return {t: Bag.from_counts(r) for t, r in zip(reversed(range(dom.first, dom.last + 1)), rows) if r}

        return lazy_table(BAG, dom, compute, f"window_future({size})")
    return Stream(s.base, dom, lambda t: _span_combine(s, t, t + size - 1), name=f"window_future({size})")


def slide(p: Callable[[TimePoint], bool], s: Stream) -> Stream:
    """Expose ``s(t)`` only where ``p(t)``; a filter on time."""
    b = s.base
    b.require_monoid("slide")
    empty = b.empty()
    return Stream(b, s.domain, lambda t: s(t) if p(t) else empty, name="slide")


def sliding_window(size: int, period: int, s: Stream, anchor: TimePoint = 0) -> Stream:
    """Classic sliding window: ``slide(periodic(period, anchor), window_time(size, s))``."""
    return slide(periodic(period, anchor), window_time(size, s))


def window_taa(size: int, s: Stream) -> Stream:
    """Time window that keeps each payload's timestamp as ``(t, x)``."""
    _require_size(size)
    b = s.base
    b.require_monoid("window_taa")
    dom = _require_timeline(s)
    stamped = Stream(b, dom, lambda u: b.map(lambda x: (u, x), s(u)), name="stamp")
    return window_time(size, stamped)


def window_row(n: int, s: Stream) -> Stream:
    """Bag of the payloads of the last ``n`` present instants up to ``t``.

    Input must be sequential (Maybe or Identity base); output is a bag stream.
    """
    _require_size(n, "row count")
    if s.base not in (MAYBE, IDENTITY):
        raise ContractViolation(f"window_row needs a maybe/identity stream, got {s.base.name}")
    dom = _require_timeline(s)
    b = s.base

    def compute():
        out = {}
        recent: list[Any] = []
        for t in dom:
            for x in b.elements(s(t)):
                recent.append(x)
            if len(recent) > n:
                del recent[: len(recent) - n]
            if recent:
                out[t] = Bag(recent)
        return out

    return lazy_table(BAG, dom, compute, f"window_row({n})")


def window_rowgen(n: int, s: Stream) -> Stream:
    """Bag of the last ``n`` non-neutral containers at instants up to ``t``."""
    _require_size(n, "row count")
    b = s.base
    if not b.has_monoid:
        raise NoMonoidError(b.name, "window_rowgen (needs a neutrality test)")
    dom = _require_timeline(s)

    def compute():
        out = {}
        recent: list[Any] = []
        for t in dom:
            c = s(t)
            if not b.is_neutral(c):
                recent.append(c)
                if len(recent) > n:
                    del recent[0]
            if recent:
                out[t] = Bag(recent)
        return out

    return lazy_table(BAG, dom, compute, f"window_rowgen({n})")


def row_slide(n: int, s: Stream) -> Stream:
    """Keep every ``n``-th non-empty instant, counting from the first one."""
    _require_size(n, "row slide")
    b = s.base
    b.require_monoid("row_slide")
    dom = _require_timeline(s)

    def compute():
        out = {}
        k = 0
        for t in dom:
            c = s(t)
            if b.is_neutral(c):
                continue
            k += 1
            if k % n == 0:
                out[t] = c
        return out

    return lazy_table(b, dom, compute, f"row_slide({n})")


def filter_late(limit: int, s: Stream) -> Stream:
    """On a bitemporal stream keep content at ``(e, a)`` iff ``a - e <= limit``."""
    b = s.base
    b.require_monoid("filter_late")
    if not isinstance(s.domain, BiDomain):
        raise ContractViolation("filter_late needs a bitemporal stream")
    empty = b.empty()
    return Stream(b, s.domain, lambda ea: s(ea) if ea[1] - ea[0] <= limit else empty, name="filter_late")


def as_of(arrival: TimePoint, s: Stream) -> Stream:
    """Event-time view of a bitemporal stream: everything arrived by ``arrival``."""
    b = s.base
    b.require_monoid("as_of")
    if not isinstance(s.domain, BiDomain):
        raise ContractViolation("as_of needs a bitemporal stream")
    arrivals = [a for a in s.domain.arrivals if a <= arrival]

    def fn(e):
        return b.combine_all(s((e, a)) for a in arrivals)

    return Stream(b, s.domain.events, fn, name=f"as_of({arrival})")


# resample


def linear_interpolation(samples: Bag, target: TimePoint):
    """Interpolate ``(t, value)`` samples at ``target``.

    Uses the nearest sample at or before and at or after the target
    (simultaneous samples are averaged); with only one side available the
    nearest sample is returned, with none ``None``.
    """
    by_time: dict[TimePoint, list[float]] = {}
    for u, v in samples:
        by_time.setdefault(u, []).append(v)
    if not by_time:
        return None

    def mean(u):
        vs = by_time[u]
        return sum(vs) / len(vs)

    before = [u for u in by_time if u <= target]
    after = [u for u in by_time if u >= target]
    if before and after:
        lo, hi = max(before), min(after)
        if lo == hi:
            return mean(lo)
        frac = (target - lo) / (hi - lo)
        return mean(lo) + (mean(hi) - mean(lo)) * frac
    return mean(max(before)) if before else mean(min(after))


def resample(
    ref: Stream,
    size: int,
    s: Stream,
    interp: Callable[[Bag, TimePoint], Any] = linear_interpolation,
) -> Stream:
    """Interpolate ``s`` at the instants where ``ref`` has content.

    The samples considered for target ``t`` are those of ``s`` in
    ``(t - size; t + size)``, stamped with their time.
    """
    _require_size(size)
    ref.base.require_monoid("resample")
    if s.base is not BAG:
        raise ContractViolation("resample needs a bag stream of numbers")
    dom = _require_timeline(s)

    def fn(t):
        if ref.base.is_neutral(ref(t)):
            return BAG.empty()
        acc: dict[Any, int] = {}
        for u in range(max(t - size + 1, dom.first), min(t + size - 1, dom.last) + 1):
            for x, n in s(u).items():
                acc[(u, x)] = acc.get((u, x), 0) + n
        v = interp(Bag.from_counts(acc), t)
        return BAG.empty() if v is None else BAG.unit(v)

    return Stream(BAG, dom, fn, name=f"resample({size})")


# bsort


def bsort(slack: int, items: Sequence[tuple[Any, Any]]) -> list[tuple[Any, Any]]:
    """Partially reorder an arrival-ordered sequence of ``(BiTime, x)`` by event time.

    A buffer of ``slack + 1`` items always emits the one with the smallest
    event time, so disorder up to ``slack`` positions is repaired.
    """
    items = list(items)
    events = [bt[0] for bt, _ in items]
    return [items[i] for i in kernels.bsort_order(events, slack)]


def inversions(xs: Sequence) -> int:
    """Number of pairs ``i < j`` with ``xs[i] > xs[j]``."""
    n = 0
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if xs[i] > xs[j]:
                n += 1
    return n
