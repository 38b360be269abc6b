"""Regular patterns over tagged, sequential event streams.

Patterns are built from atoms (event tags), sequence ``p . q``, alternation
``p | q``, star ``p*`` and option ``p?``.  Matching a pattern yields a stream
of typed match values whose shape mirrors the pattern:

=========== ===========================
pattern     match value
=========== ===========================
``a``       the payload of the ``a`` event
``p . q``   ``(value_p, value_q)``
``p | q``   ``Left(value_p)`` or ``Right(value_q)``
``p*``      ``Seq([value_p, ...])``
``p?``      ``Present(value_p)`` or ``ABSENT``
=========== ===========================

Every accepting parse of every candidate subsequence is reported, at the time
of its last event.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Any, Hashable, Iterator, NamedTuple

from .base import BAG, IDENTITY, MAYBE, Bag, Seq
from .errors import ContractViolation
from .stream import Stream, Tagged
from .windows import lazy_table


class Pattern:
    def alphabet(self) -> frozenset:
        raise NotImplementedError

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, repr=False)
class Atom(Pattern):
    tag: Hashable

    def alphabet(self):
        return frozenset((self.tag,))

    def __repr__(self):
        return f"Atom({self.tag!r})"


@dataclass(frozen=True)
class Sequence(Pattern):
    first: Pattern
    second: Pattern

    def alphabet(self):
        return self.first.alphabet() | self.second.alphabet()


@dataclass(frozen=True)
class Alternation(Pattern):
    left: Pattern
    right: Pattern

    def alphabet(self):
        return self.left.alphabet() | self.right.alphabet()


@dataclass(frozen=True)
class Star(Pattern):
    body: Pattern

    def alphabet(self):
        return self.body.alphabet()


@dataclass(frozen=True)
class Optional(Pattern):
    body: Pattern

    def alphabet(self):
        return self.body.alphabet()


def seq(*parts: Pattern) -> Pattern:
    """Right-nested sequence: ``seq(a, b, c) == a . (b . c)``."""
    if not parts:
        raise ValueError("empty sequence")
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Sequence(p, out)
    return out


def render(p: Pattern) -> str:
    if isinstance(p, Atom):
        return str(p.tag)
    if isinstance(p, Sequence):
        right = render(p.second)
        if isinstance(p.second, Alternation):
            right = f"({right})"
        left = render(p.first)
        if isinstance(p.first, (Alternation, Sequence)):
            left = f"({left})"
        return f"{left}.{right}"
    if isinstance(p, Alternation):
        left = render(p.left)
        if isinstance(p.left, Alternation):
            left = f"({left})"
        return f"{left}|{render(p.right)}"
    inner = render(p.body)
    if not isinstance(p.body, Atom):
        inner = f"({inner})"
    return inner + ("*" if isinstance(p, Star) else "?")


# parsing

_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(.))")


class PatternSyntaxError(ValueError):
    pass


def _tokens(text: str) -> list[str]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        ident, sym = m.groups()
        if sym is not None and sym not in ".|*?()":
            raise PatternSyntaxError(f"unexpected {sym!r} at {m.start(2)}")
        out.append(ident or sym)
        pos = m.end()
    return out


def parse_pattern(text: str) -> Pattern:
    """Parse ``a.b``, ``a|b``, ``a*``, ``a?`` and parentheses.

    Postfix operators bind tightest, then ``.``, then ``|``; both binary
    operators nest to the right.
    """
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise PatternSyntaxError(f"expected {expected or 'token'} at token {pos} in {text!r}")
        pos += 1
        return tok

    def alt():
        left = sequence()
        if peek() == "|":
            take("|")
            return Alternation(left, alt())
        return left

    def sequence():
        left = postfix()
        if peek() == ".":
            take(".")
            return Sequence(left, sequence())
        return left

    def postfix():
        p = primary()
        while peek() in ("*", "?"):
            p = Star(p) if take() == "*" else Optional(p)
        return p

    def primary():
        tok = take()
        if tok == "(":
            p = alt()
            take(")")
            return p
        if tok in ".|*?)":
            raise PatternSyntaxError(f"unexpected {tok!r} in {text!r}")
        return Atom(tok)

    if not toks:
        raise PatternSyntaxError("empty pattern")
    p = alt()
    if pos != len(toks):
        raise PatternSyntaxError(f"trailing input at token {pos} in {text!r}")
    return p


# match values


@dataclass(frozen=True)
class Left:
    value: Any


@dataclass(frozen=True)
class Right:
    value: Any


@dataclass(frozen=True)
class Present:
    value: Any


class _Absent:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ABSENT"

    def __reduce__(self):
        return (_Absent, ())


ABSENT = _Absent()


def conforms(value: Any, p: Pattern) -> bool:
    """Whether ``value`` has the shape a match of ``p`` must have."""
    if isinstance(p, Atom):
        return True
    if isinstance(p, Sequence):
        return (
            isinstance(value, tuple)
            and len(value) == 2
            and conforms(value[0], p.first)
            and conforms(value[1], p.second)
        )
    if isinstance(p, Alternation):
        if isinstance(value, Left):
            return conforms(value.value, p.left)
        return isinstance(value, Right) and conforms(value.value, p.right)
    if isinstance(p, Star):
        return isinstance(value, Seq) and all(conforms(v, p.body) for v in value)
    if isinstance(p, Optional):
        if value is ABSENT:
            return True
        return isinstance(value, Present) and conforms(value.value, p.body)
    raise TypeError(f"not a pattern: {p!r}")


# matching


class Policy(str, enum.Enum):
    STRICT = "strict"
    SKIP = "skip"


class Match(NamedTuple):
    value: Any
    times: tuple
    emitted: Any


def _events(s: Stream) -> list[tuple[Any, Tagged]]:
    if s.base not in (MAYBE, IDENTITY):
        raise ContractViolation(f"pattern matching needs a maybe/identity stream, got {s.base.name}")
    out = []
    for t in s.domain:
        for x in s.base.elements(s(t)):
            if not isinstance(x, Tagged):
                raise ContractViolation(f"pattern input at t={t} is not tagged: {x!r}")
            out.append((t, x))
    return out


class _Parser:
    """All parses of ``events[i:j]`` against each sub-pattern, memoized."""

    def __init__(self, events: list[tuple[Any, Tagged]]) -> None:
        self.events = events
        self.memo: dict[tuple[int, int, int], list[tuple[Any, tuple]]] = {}

    def parses(self, p: Pattern, i: int, j: int) -> list[tuple[Any, tuple]]:
        key = (id(p), i, j)
        hit = self.memo.get(key)
        if hit is None:
            hit = self.memo[key] = list(self._parses(p, i, j))
        return hit

    def _parses(self, p, i, j) -> Iterator[tuple[Any, tuple]]:
        if isinstance(p, Atom):
            if j == i + 1:
                t, ev = self.events[i]
                if ev.tag == p.tag:
                    yield ev.payload, (t,)
        elif isinstance(p, Sequence):
            for m in range(i, j + 1):
                rights = self.parses(p.second, m, j)
                if not rights:
                    continue
                for lv, lt in self.parses(p.first, i, m):
                    for rv, rt in rights:
                        yield (lv, rv), lt + rt
        elif isinstance(p, Alternation):
            for v, ts in self.parses(p.left, i, j):
                yield Left(v), ts
            for v, ts in self.parses(p.right, i, j):
                yield Right(v), ts
        elif isinstance(p, Star):
            if i == j:
                yield Seq(), ()
                return
            # iterations consume at least one event so the parse set stays finite
            for m in range(i + 1, j + 1):
                rest = self.parses(p, m, j)
                if not rest:
                    continue
                for hv, ht in self.parses(p.body, i, m):
                    for rv, rt in rest:
                        yield Seq((hv, *rv)), ht + rt
        elif isinstance(p, Optional):
            if i == j:
                yield ABSENT, ()
            else:
                for v, ts in self.parses(p.body, i, j):
                    yield Present(v), ts
        else:
            raise TypeError(f"not a pattern: {p!r}")


def length_bounds(p: Pattern) -> tuple[int, int | None]:
    """Fewest and most events a match of ``p`` can span (``None``: unbounded)."""
    if isinstance(p, Atom):
        return 1, 1
    if isinstance(p, Sequence):
        a, b = length_bounds(p.first)
        c, d = length_bounds(p.second)
        return a + c, None if b is None or d is None else b + d
    if isinstance(p, Alternation):
        a, b = length_bounds(p.left)
        c, d = length_bounds(p.right)
        return min(a, c), None if b is None or d is None else max(b, d)
    if isinstance(p, Star):
        return 0, None
    if isinstance(p, Optional):
        return 0, length_bounds(p.body)[1]
    raise TypeError(f"not a pattern: {p!r}")


def iter_matches(p: Pattern, s: Stream, policy: Policy | str = Policy.SKIP) -> Iterator[Match]:
    """Every match of ``p`` over ``s`` in order of emission time."""
    policy = Policy(policy)
    alphabet = p.alphabet()
    if not alphabet:
        raise ValueError("pattern has an empty alphabet")
    events = _events(s)
    if policy is Policy.SKIP:
        events = [(t, ev) for t, ev in events if ev.tag in alphabet]
    parser = _Parser(events)
    shortest, longest = length_bounds(p)
    shortest = max(shortest, 1)
    for j in range(1, len(events) + 1):
        emitted = events[j - 1][0]
        lowest = 0 if longest is None else max(0, j - longest)
        for i in range(j - shortest, lowest - 1, -1):
            for value, times in parser.parses(p, i, j):
                yield Match(value, times, emitted)


def match_pattern(p: Pattern | str, s: Stream, policy: Policy | str = Policy.SKIP) -> Stream:
    """Stream of match values; simultaneous completions share one bag."""
    if isinstance(p, str):
        p = parse_pattern(p)

    def compute():
        acc: dict[Any, dict[Any, int]] = {}
        for m in iter_matches(p, s, policy):
            d = acc.setdefault(m.emitted, {})
            d[m.value] = d.get(m.value, 0) + 1
        return {t: Bag.from_counts(d) for t, d in acc.items()}

    # validate eagerly so contract errors surface at construction
    if s.base not in (MAYBE, IDENTITY):
        raise ContractViolation(f"pattern matching needs a maybe/identity stream, got {s.base.name}")
    if not p.alphabet():
        raise ValueError("pattern has an empty alphabet")
    return lazy_table(BAG, s.domain, compute, f"match({render(p)})")


_ROW_TAG = "a"


def _unnest(value: Any, n: int) -> list[Any]:
    out = []
    for _ in range(n - 1):
        head, value = value
        out.append(head)
    out.append(value)
    return out


def row_window_via_pattern(n: int, s: Stream) -> Stream:
    """The last ``n`` elements as an ordered :class:`Seq`, via pattern ``a . a ... a``."""
    if n < 1:
        raise ValueError(f"row count must be >= 1, got {n}")
    if s.base not in (MAYBE, IDENTITY):
        raise ContractViolation(f"row_window_via_pattern needs a maybe/identity stream, got {s.base.name}")
    b = s.base
    tagged = Stream(b, s.domain, lambda t: b.map(lambda x: Tagged(_ROW_TAG, x), s(t)), name="tag")
    matches = match_pattern(seq(*[Atom(_ROW_TAG)] * n), tagged, Policy.SKIP)
    return Stream(BAG, s.domain, lambda t: BAG.map(lambda v: Seq(_unnest(v, n)), matches(t)),
                  name=f"row_via_pattern({n})")
