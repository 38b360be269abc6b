"""Discrete time: ticks, intervals, finite domains and the bitemporal product."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, NamedTuple

TimePoint = int

#: smallest time difference between two instants
EPSILON = 1


@dataclass(frozen=True)
class TimeInterval:
    """A closed integer interval ``[lo, hi]``.

    Open bounds are normalized away on construction (see :func:`interval`), so
    two intervals are equal iff they contain the same ticks.  Every empty
    interval collapses to :data:`EMPTY`.
    """

    lo: TimePoint
    hi: TimePoint

    def __post_init__(self) -> None:
        if self.lo > self.hi and (self.lo, self.hi) != (0, -1):
            object.__setattr__(self, "lo", 0)
            object.__setattr__(self, "hi", -1)

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __contains__(self, t: object) -> bool:
        return isinstance(t, int) and self.lo <= t <= self.hi

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __iter__(self) -> Iterator[TimePoint]:
        return iter(range(self.lo, self.hi + 1))

    def __repr__(self) -> str:
        if self.is_empty:
            return "TimeInterval.EMPTY"
        return f"[{self.lo}; {self.hi}]"


EMPTY = TimeInterval(0, -1)


def interval(
    lo: TimePoint, hi: TimePoint, lo_closed: bool = True, hi_closed: bool = True
) -> TimeInterval:
    """Build an interval from possibly open bounds; ``(a; b]`` becomes ``[a+1, b]``."""
    if not lo_closed:
        lo += EPSILON
    if not hi_closed:
        hi -= EPSILON
    if lo > hi:
        return EMPTY
    return TimeInterval(lo, hi)


def closed_open(lo: TimePoint, hi: TimePoint) -> TimeInterval:
    return interval(lo, hi, True, False)


def open_closed(lo: TimePoint, hi: TimePoint) -> TimeInterval:
    return interval(lo, hi, False, True)


class BiTime(NamedTuple):
    """Event time paired with arrival time; tuple order is lexicographic."""

    event: TimePoint
    arrival: TimePoint

    @property
    def lateness(self) -> int:
        return self.arrival - self.event


@dataclass(frozen=True)
class FiniteDomain:
    """The inclusive tick range ``first..last`` a stream is evaluated over."""

    first: TimePoint
    last: TimePoint

    def __post_init__(self) -> None:
        if self.first > self.last:
            raise ValueError(f"empty domain: first={self.first} > last={self.last}")

    def __iter__(self) -> Iterator[TimePoint]:
        return iter(range(self.first, self.last + 1))

    def __len__(self) -> int:
        return self.last - self.first + 1

    def __contains__(self, t: object) -> bool:
        return isinstance(t, int) and self.first <= t <= self.last

    def index(self, t: TimePoint) -> int:
        return t - self.first

    def clip(self, iv: TimeInterval) -> TimeInterval:
        if iv.is_empty:
            return EMPTY
        return interval(max(iv.lo, self.first), min(iv.hi, self.last))


@dataclass(frozen=True)
class BiDomain:
    """Product of an event-time and an arrival-time domain."""

    events: FiniteDomain
    arrivals: FiniteDomain

    def __iter__(self) -> Iterator[BiTime]:
        for e in self.events:
            for a in self.arrivals:
                yield BiTime(e, a)

    def __len__(self) -> int:
        return len(self.events) * len(self.arrivals)

    def __contains__(self, t: object) -> bool:
        return (
            isinstance(t, tuple)
            and len(t) == 2
            and t[0] in self.events
            and t[1] in self.arrivals
        )


def interval_members(iv: TimeInterval, dom: FiniteDomain) -> list[TimePoint]:
    """Ticks of ``dom`` inside ``iv``, ascending."""
    return list(dom.clip(iv))


def periodic(period: int, anchor: TimePoint = 0) -> Callable[[TimePoint], bool]:
    """Predicate true at ``anchor + k * period`` for every integer ``k``."""
    if period < 1:
        raise ValueError(f"period must be >= 1, got {period}")

    def predicate(t: TimePoint) -> bool:
        return (t - anchor) % period == 0

    predicate.__qualname__ = f"periodic({period}, {anchor})"
    return predicate
