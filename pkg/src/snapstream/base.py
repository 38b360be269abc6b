"""Per-instant base containers and their monad (and monoid) structure.

A stream assigns one container to every instant.  Which container is used
decides the per-instant semantics: :data:`BAG` keeps duplicates, :data:`SET`
drops them, :data:`MAYBE` allows at most one value, :data:`IDENTITY` exactly
one, and :data:`SEQ` keeps the order of simultaneous values.

Each instance bundles ``unit``/``map``/``flatten``/``equal`` and, except for
identity, the monoid ``empty``/``combine``.  Filtering and cross products are
derived from those primitives, so they are lawful for every instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Iterable, Iterator

from .errors import NoMonoidError


class Bag:
    """Immutable multiset storing payload -> multiplicity (all >= 1)."""

    __slots__ = ("_counts", "_hash")

    def __init__(self, items: Iterable[Any] = ()) -> None:
        counts: dict[Any, int] = {}
        for x in items:
            counts[x] = counts.get(x, 0) + 1
        self._counts = counts
        self._hash: int | None = None

    @classmethod
    def from_counts(cls, counts: dict[Any, int] | Iterable[tuple[Any, int]]) -> "Bag":
        bag = cls.__new__(cls)
        pairs = counts.items() if isinstance(counts, dict) else counts
        acc: dict[Any, int] = {}
        for x, n in pairs:
            if n < 0:
                raise ValueError(f"negative multiplicity {n} for {x!r}")
            if n:
                acc[x] = acc.get(x, 0) + n
        bag._counts = acc
        bag._hash = None
        return bag

    def count(self, x: Any) -> int:
        return self._counts.get(x, 0)

    def items(self):
        return self._counts.items()

    def distinct(self) -> Iterator[Any]:
        return iter(self._counts)

    def __iter__(self) -> Iterator[Any]:
        for x, n in self._counts.items():
            for _ in range(n):
                yield x

    def __len__(self) -> int:
        return sum(self._counts.values())

    def __bool__(self) -> bool:
        return bool(self._counts)

    def __contains__(self, x: object) -> bool:
        return x in self._counts

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bag):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._counts.items()))
        return self._hash

    def __add__(self, other: "Bag") -> "Bag":
        acc = dict(self._counts)
        for x, n in other._counts.items():
            acc[x] = acc.get(x, 0) + n
        return Bag.from_counts(acc)

    def __repr__(self) -> str:
        inner = ", ".join(f"{x!r}: {n}" for x, n in self._counts.items())
        return "Bag({" + inner + "})"


class SetC:
    """Duplicate-free collection that relies on payload equality only.

    No hashing or ordering of payloads is assumed, so membership is a linear
    scan.  That keeps sets of unhashable values (e.g. streams) possible.
    """

    __slots__ = ("_items",)

    def __init__(self, items: Iterable[Any] = ()) -> None:
        acc: list[Any] = []
        for x in items:
            if not any(x == y for y in acc):
                acc.append(x)
        self._items = tuple(acc)

    def __iter__(self) -> Iterator[Any]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __contains__(self, x: object) -> bool:
        return any(x == y for y in self._items)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetC):
            return NotImplemented
        return len(self) == len(other) and all(x in other for x in self._items)

    def __hash__(self) -> int:
        try:
            return hash(frozenset(self._items))
        except TypeError:
            return hash(("SetC", len(self._items)))

    def __repr__(self) -> str:
        return "SetC({" + ", ".join(map(repr, self._items)) + "})"


@dataclass(frozen=True)
class Some:
    value: Any

    def __repr__(self) -> str:
        return f"Some({self.value!r})"


class _Nothing:
    _instance: "_Nothing | None" = None

    def __new__(cls) -> "_Nothing":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOTHING"

    def __reduce__(self):
        return (_Nothing, ())


NOTHING = _Nothing()


@dataclass(frozen=True)
class Identity:
    value: Any

    def __repr__(self) -> str:
        return f"Identity({self.value!r})"


class Seq:
    """Immutable ordered sequence; equality is order-sensitive."""

    __slots__ = ("_items",)

    def __init__(self, items: Iterable[Any] = ()) -> None:
        self._items = tuple(items)

    @property
    def items(self) -> tuple:
        return self._items

    def __iter__(self) -> Iterator[Any]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __getitem__(self, i):
        return self._items[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Seq):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return hash(("Seq", self._items))

    def __repr__(self) -> str:
        return f"Seq({list(self._items)!r})"


class BaseMonad:
    """A base container type together with its monadic operations."""

    name = "base"
    has_monoid = True

    def unit(self, x: Any) -> Any:
        raise NotImplementedError

    def map(self, f: Callable[[Any], Any], c: Any) -> Any:
        raise NotImplementedError

    def flatten(self, cc: Any) -> Any:
        raise NotImplementedError

    def elements(self, c: Any) -> Iterator[Any]:
        """Payloads of ``c``, repeated according to multiplicity."""
        raise NotImplementedError

    def is_container(self, c: Any) -> bool:
        raise NotImplementedError

    def equal(self, a: Any, b: Any) -> bool:
        return a == b

    def empty(self) -> Any:
        raise NoMonoidError(self.name)

    def combine(self, a: Any, b: Any) -> Any:
        raise NoMonoidError(self.name)

    def is_neutral(self, c: Any) -> bool:
        return self.equal(c, self.empty())

    def require_monoid(self, op: str | None = None) -> None:
        if not self.has_monoid:
            raise NoMonoidError(self.name, op)

    # derived operations

    def bind(self, c: Any, f: Callable[[Any], Any]) -> Any:
        return self.flatten(self.map(f, c))

    def filter(self, p: Callable[[Any], bool], c: Any) -> Any:
        self.require_monoid("filter")
        empty = self.empty()
        return self.bind(c, lambda x: self.unit(x) if p(x) else empty)

    def cross(self, a: Any, b: Any) -> Any:
        return self.bind(a, lambda x: self.map(lambda y: (x, y), b))

    def combine_all(self, cs: Iterable[Any]) -> Any:
        return reduce(self.combine, cs, self.empty())

    def of(self, xs: Iterable[Any]) -> Any:
        """Collect payloads into a container (combine of units)."""
        return self.combine_all(self.unit(x) for x in xs)

    def __repr__(self) -> str:
        return f"<base {self.name}>"


class BagMonad(BaseMonad):
    name = "bag"

    def unit(self, x):
        return Bag.from_counts({x: 1})

    def map(self, f, c):
        acc: dict[Any, int] = {}
        for x, n in c.items():
            y = f(x)
            acc[y] = acc.get(y, 0) + n
        return Bag.from_counts(acc)

    def flatten(self, cc):
        acc: dict[Any, int] = {}
        for inner, m in cc.items():
            for x, n in inner.items():
                acc[x] = acc.get(x, 0) + n * m
        return Bag.from_counts(acc)

    def elements(self, c):
        return iter(c)

    def is_container(self, c):
        return isinstance(c, Bag)

    def empty(self):
        return _EMPTY_BAG

    def combine(self, a, b):
        if not a:
            return b
        if not b:
            return a
        return a + b

    def is_neutral(self, c):
        return not c

    def of(self, xs):
        return Bag(xs)


_EMPTY_BAG = Bag()


class SetMonad(BaseMonad):
    name = "set"

    def unit(self, x):
        return SetC((x,))

    def map(self, f, c):
        return SetC(f(x) for x in c)

    def flatten(self, cc):
        return SetC(x for inner in cc for x in inner)

    def elements(self, c):
        return iter(c)

    def is_container(self, c):
        return isinstance(c, SetC)

    def empty(self):
        return SetC()

    def combine(self, a, b):
        return SetC((*a, *b))

    def is_neutral(self, c):
        return not c

    def of(self, xs):
        return SetC(xs)


class MaybeMonad(BaseMonad):
    """At most one value per instant; combine keeps the left operand."""

    name = "maybe"

    def unit(self, x):
        return Some(x)

    def map(self, f, c):
        return NOTHING if c is NOTHING else Some(f(c.value))

    def flatten(self, cc):
        return NOTHING if cc is NOTHING else cc.value

    def elements(self, c):
        return iter(()) if c is NOTHING else iter((c.value,))

    def is_container(self, c):
        return c is NOTHING or isinstance(c, Some)

    def empty(self):
        return NOTHING

    def combine(self, a, b):
        return b if a is NOTHING else a

    def is_neutral(self, c):
        return c is NOTHING


class IdentityMonad(BaseMonad):
    """Exactly one value per instant; there is no empty container."""

    name = "identity"
    has_monoid = False

    def unit(self, x):
        return Identity(x)

    def map(self, f, c):
        return Identity(f(c.value))

    def flatten(self, cc):
        return cc.value

    def elements(self, c):
        return iter((c.value,))

    def is_container(self, c):
        return isinstance(c, Identity)

    def is_neutral(self, c):
        raise NoMonoidError(self.name, "is_neutral")


class SeqMonad(BaseMonad):
    name = "seq"

    def unit(self, x):
        return Seq((x,))

    def map(self, f, c):
        return Seq(f(x) for x in c)

    def flatten(self, cc):
        return Seq(x for inner in cc for x in inner)

    def elements(self, c):
        return iter(c)

    def is_container(self, c):
        return isinstance(c, Seq)

    def empty(self):
        return _EMPTY_SEQ

    def combine(self, a, b):
        return Seq((*a, *b))

    def is_neutral(self, c):
        return not c

    def of(self, xs):
        return Seq(xs)


_EMPTY_SEQ = Seq()

BAG = BagMonad()
SET = SetMonad()
MAYBE = MaybeMonad()
IDENTITY = IdentityMonad()
SEQ = SeqMonad()

BASES: dict[str, BaseMonad] = {b.name: b for b in (BAG, SET, MAYBE, IDENTITY, SEQ)}


def base_by_name(name: str) -> BaseMonad:
    try:
        return BASES[name]
    except KeyError:
        raise ValueError(f"unknown base {name!r}; expected one of {sorted(BASES)}") from None
