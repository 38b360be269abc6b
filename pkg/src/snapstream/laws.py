"""Exhaustive and randomized checks of the algebraic laws.

Checks never raise on a violated law: they return :class:`LawResult` records
holding counterexamples, so a broken instance is data, not an error.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Sequence

from . import physical
from .base import BAG, BASES, IDENTITY, MAYBE, SEQ, SET, Bag, BaseMonad, Seq, SetC
from .generate import CARRIER, random_container, random_stream, small_containers
from .stream import Stream, first_difference, flatten_stream, map_stream, streams_equal, unit_stream
from .time import FiniteDomain

MONAD_LAWS = {
    1: "map id = id",
    2: "map (g . f) = map g . map f",
    3: "map f . unit = unit . f",
    4: "map f . flatten = flatten . map (map f)",
    5: "flatten . unit = id",
    6: "flatten . map unit = id",
    7: "flatten . flatten = flatten . map flatten",
}

MONOID_LAWS = {
    "left_identity": "empty <> a = a",
    "right_identity": "a <> empty = a",
    "associativity": "(a <> b) <> c = a <> (b <> c)",
}


@dataclass
class LawResult:
    instance: str
    law: Any
    name: str
    passed: bool = True
    checked: int = 0
    exhaustive: bool = True
    counterexamples: list[str] = field(default_factory=list)

    def fail(self, text: str, keep: int) -> None:
        self.passed = False
        if len(self.counterexamples) < keep:
            self.counterexamples.append(text)

    def to_json(self, suite: str | None = None) -> dict:
        out = {
            "instance": self.instance,
            "law": self.law,
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "exhaustive": self.exhaustive,
            "counterexamples": self.counterexamples,
        }
        if suite is not None:
            out = {"suite": suite, **out}
        return out


@dataclass
class Monad:
    """What the law checker needs from a monad.

    ``lift`` turns a list of values of type ``x`` into sample values of type
    ``m x``; it is applied repeatedly to get ``m (m x)`` and ``m (m (m x))``.
    """

    name: str
    unit: Callable[[Any], Any]
    map: Callable[[Callable, Any], Any]
    flatten: Callable[[Any], Any]
    equal: Callable[[Any, Any], bool]
    lift: Callable[[Sequence[Any]], list]
    sampled: bool = False


class FnTable:
    """A total function given by a lookup table; printable in counterexamples."""

    __slots__ = ("table",)

    def __init__(self, table: dict) -> None:
        self.table = table

    def __call__(self, x):
        return self.table[x]

    def __repr__(self) -> str:
        return "{" + ", ".join(f"{k!r}->{v!r}" for k, v in self.table.items()) + "}"


def function_tables(src: Sequence[Any], dst: Sequence[Any]) -> list[FnTable]:
    """All ``len(dst) ** len(src)`` functions from ``src`` to ``dst``."""
    return [FnTable(dict(zip(src, image))) for image in itertools.product(dst, repeat=len(src))]


def _identity(x):
    return x


def _cap(values: list, limit: int | None, rng: random.Random) -> tuple[list, bool]:
    if limit is None or len(values) <= limit:
        return values, True
    return rng.sample(values, limit), False


def check_monad_laws(
    m: Monad,
    carrier: Sequence[Any] = CARRIER,
    functions: Sequence[Callable] | None = None,
    *,
    limit: int | None = 2500,
    seed: int = 0,
    keep: int = 3,
) -> list[LawResult]:
    """Instantiate the seven monad laws with every sample value and function.

    ``functions`` defaults to every function table ``carrier -> carrier``.
    Sample sets larger than ``limit`` are subsampled (seeded) and the result
    is marked non-exhaustive.
    """
    rng = random.Random(seed)
    carrier = list(carrier)
    fns = list(functions) if functions is not None else function_tables(carrier, carrier)
    mx, ex1 = _cap(m.lift(carrier), limit, rng)
    mmx, ex2 = _cap(m.lift(mx), limit, rng)
    mmmx, ex3 = _cap(m.lift(mmx), limit, rng)
    if m.sampled:
        ex1 = ex2 = ex3 = False
    eq = m.equal
    results = {k: LawResult(m.name, k, v) for k, v in MONAD_LAWS.items()}

    r = results[1]
    r.exhaustive = ex1
    for v in mx:
        r.checked += 1
        if not eq(m.map(_identity, v), v):
            r.fail(f"v={v!r}", keep)

    r = results[2]
    r.exhaustive = ex1
    for f in fns:
        mapped_f = [(v, m.map(f, v)) for v in mx]
        for g in fns:
            gf = lambda x, f=f, g=g: g(f(x))  # noqa: E731
            for v, fv in mapped_f:
                r.checked += 1
                if not eq(m.map(gf, v), m.map(g, fv)):
                    r.fail(f"f={f!r} g={g!r} v={v!r}", keep)

    r = results[3]
    for f in fns:
        for x in carrier:
            r.checked += 1
            if not eq(m.map(f, m.unit(x)), m.unit(f(x))):
                r.fail(f"f={f!r} x={x!r}", keep)

    r = results[4]
    r.exhaustive = ex1 and ex2
    for f in fns:
        for vv in mmx:
            r.checked += 1
            if not eq(m.map(f, m.flatten(vv)), m.flatten(m.map(lambda v: m.map(f, v), vv))):
                r.fail(f"f={f!r} vv={vv!r}", keep)

    r = results[5]
    r.exhaustive = ex1
    for v in mx:
        r.checked += 1
        if not eq(m.flatten(m.unit(v)), v):
            r.fail(f"v={v!r}", keep)

    r = results[6]
    r.exhaustive = ex1
    for v in mx:
        r.checked += 1
        if not eq(m.flatten(m.map(m.unit, v)), v):
            r.fail(f"v={v!r}", keep)

    r = results[7]
    r.exhaustive = ex1 and ex2 and ex3
    for vvv in mmmx:
        r.checked += 1
        if not eq(m.flatten(m.flatten(vvv)), m.flatten(m.map(m.flatten, vvv))):
            r.fail(f"vvv={vvv!r}", keep)

    return [results[k] for k in sorted(results)]


def check_monoid_laws(
    base: BaseMonad,
    trials: int = 1000,
    *,
    seed: int = 0,
    sample: Callable[[random.Random], Any] | None = None,
    keep: int = 3,
) -> list[LawResult]:
    """Identity and associativity of ``combine`` on random triples."""
    base.require_monoid("check_monoid_laws")
    rng = random.Random(seed)
    sample = sample or (lambda r: random_container(base, r, CARRIER, 4))
    e = base.empty()
    results = {k: LawResult(base.name, k, v, exhaustive=False) for k, v in MONOID_LAWS.items()}
    for _ in range(trials):
        a, b, c = sample(rng), sample(rng), sample(rng)
        for key, ok in (
            ("left_identity", base.equal(base.combine(e, a), a)),
            ("right_identity", base.equal(base.combine(a, e), a)),
            ("associativity", base.equal(
                base.combine(base.combine(a, b), c), base.combine(a, base.combine(b, c)))),
        ):
            res = results[key]
            res.checked += 1
            if not ok:
                res.fail(f"a={a!r} b={b!r} c={c!r}", keep)
    return list(results.values())


@dataclass
class Reducibility:
    passed: bool
    tick: Any = None
    checked: int = 0


def check_snapshot_reducible(
    op_s: Callable[..., Stream],
    op_base: Callable[..., Any],
    inputs: Sequence[Stream],
    domain=None,
) -> Reducibility:
    """Whether snapshotting commutes with the operator at every tick."""
    out = op_s(*inputs)
    domain = inputs[0].domain if domain is None else domain
    n = 0
    for t in domain:
        n += 1
        if not out.base.equal(out(t), op_base(*(s(t) for s in inputs))):
            return Reducibility(False, t, n)
    return Reducibility(True, None, n)


@dataclass
class InverseCheck:
    passed: bool
    case: int | None = None
    tick: Any = None
    checked: int = 0


def check_right_inverse(
    snapshot: Callable[[Any, Any], Bag],
    reconstruct: Callable[[Callable, FiniteDomain], Any],
    functions: Iterable[Callable],
    domain: FiniteDomain,
) -> InverseCheck:
    """``snapshot(reconstruct(f), t) == f(t)`` for every function and tick."""
    n = 0
    for i, f in enumerate(functions):
        n += 1
        t = physical.right_inverse_failure(snapshot, reconstruct, f, domain)
        if t is not None:
            return InverseCheck(False, i, t, n)
    return InverseCheck(True, None, None, n)


# monad instances under test


def base_monad(base: BaseMonad, max_size: int = 2) -> Monad:
    return Monad(
        name=base.name,
        unit=base.unit,
        map=base.map,
        flatten=base.flatten,
        equal=base.equal,
        lift=lambda xs: small_containers(base, xs, max_size),
    )


def stream_monad(base: BaseMonad, domain: FiniteDomain, samples: int = 12, seed: int = 0) -> Monad:
    """The stream monad over ``base``; samples are random tables plus the unit streams."""
    rng = random.Random(seed)

    def lift(xs):
        containers = small_containers(base, xs, 2)
        out = [unit_stream(x, base, domain) for x in list(xs)[:2]]
        if base.has_monoid:
            out.append(Stream.empty(base, domain))
        while len(out) < samples:
            if base.has_monoid:
                table = {t: rng.choice(containers) for t in domain if rng.random() < 0.7}
            else:
                table = {t: rng.choice(containers) for t in domain}
            out.append(Stream.from_table(base, table, domain))
        return out

    return Monad(
        name=f"stream[{base.name}]/sampled",
        unit=lambda x: unit_stream(x, base, domain),
        map=map_stream,
        flatten=flatten_stream,
        equal=lambda a, b: streams_equal(a, b, domain),
        lift=lift,
        sampled=True,
    )


def stream_monad_exhaustive(base: BaseMonad, domain: FiniteDomain, max_size: int = 1) -> Monad:
    """The stream monad over ``base`` with every stream as a sample.

    ``lift`` enumerates every table ``domain -> container`` where containers
    hold at most ``max_size`` payloads, so the sample count is
    ``len(containers) ** len(domain)``; keep both small.
    """
    ticks = list(domain)

    def lift(xs):
        containers = small_containers(base, xs, max_size)
        return [Stream.from_table(base, dict(zip(ticks, row)), domain)
                for row in itertools.product(containers, repeat=len(ticks))]

    return Monad(
        name=f"stream[{base.name}]",
        unit=lambda x: unit_stream(x, base, domain),
        map=map_stream,
        flatten=flatten_stream,
        equal=lambda a, b: streams_equal(a, b, domain),
        lift=lift,
    )


# seeded broken instances; each must violate at least one law


def _drop_one(cc):
    flat = BAG.flatten(cc)
    if not flat:
        return flat
    victim = next(iter(flat.distinct()))
    counts = dict(flat.items())
    counts[victim] -= 1
    return Bag.from_counts(counts)


def mutants(domain: FiniteDomain) -> list[Monad]:
    bag = base_monad(BAG)
    seq = base_monad(SEQ)
    st = stream_monad(BAG, domain)

    def late_flatten(ss):
        last = domain.last
        return Stream(BAG, domain, lambda t: BAG.flatten(BAG.map(lambda s: s(min(t + 1, last)), ss(t))))

    return [
        Monad("bag/flatten-drops-one", bag.unit, bag.map, _drop_one, bag.equal, bag.lift),
        Monad("bag/unit-duplicates", lambda x: Bag((x, x)), bag.map, bag.flatten, bag.equal, bag.lift),
        Monad("bag/map-forgets-multiplicity", bag.unit,
              lambda f, c: Bag({f(x) for x in c}), bag.flatten, bag.equal, bag.lift),
        Monad("set/flatten-first-only", SET.unit, SET.map,
              lambda cc: next(iter(cc), SetC()), SET.equal, base_monad(SET).lift),
        Monad("maybe/flatten-to-nothing", MAYBE.unit, MAYBE.map,
              lambda cc: MAYBE.empty(), MAYBE.equal, base_monad(MAYBE).lift),
        Monad("identity/map-ignores-f", IDENTITY.unit, lambda f, c: c,
              IDENTITY.flatten, IDENTITY.equal, base_monad(IDENTITY).lift),
        Monad("seq/flatten-reversed", seq.unit, seq.map,
              lambda cc: Seq(x for inner in reversed(cc.items) for x in inner), seq.equal, seq.lift),
        Monad("stream[bag]/flatten-reads-next-tick", st.unit, st.map, late_flatten, st.equal, st.lift,
              sampled=True),
    ]


# named suites for the command line


DEFAULT_DOMAIN = FiniteDomain(0, 5)
EXHAUSTIVE_DOMAIN = FiniteDomain(0, 1)


def suite_monad(domain: FiniteDomain = DEFAULT_DOMAIN) -> Iterator[dict]:
    for b in BASES.values():
        for r in check_monad_laws(base_monad(b), limit=None):
            yield r.to_json("monad")
    # every stream over two ticks, then random streams over the full domain
    for b in BASES.values():
        for r in check_monad_laws(stream_monad_exhaustive(b, EXHAUSTIVE_DOMAIN), limit=None):
            yield r.to_json("monad")
    for b in BASES.values():
        for r in check_monad_laws(stream_monad(b, domain)):
            yield r.to_json("monad")


def suite_mutation(domain: FiniteDomain = DEFAULT_DOMAIN) -> Iterator[dict]:
    """A mutant passes this suite when the law checker rejects it."""
    for m in mutants(domain):
        results = check_monad_laws(m, limit=400)
        failed = [r.law for r in results if not r.passed]
        yield {
            "suite": "mutation",
            "instance": m.name,
            "law": "detected",
            "name": "at least one monad law fails",
            "passed": bool(failed),
            "checked": sum(r.checked for r in results),
            "exhaustive": False,
            "counterexamples": [f"laws failed: {failed}"] if failed else [],
        }


def suite_monoid() -> Iterator[dict]:
    for b in (BAG, SET, MAYBE, SEQ):
        for r in check_monoid_laws(b):
            yield r.to_json("monoid")


def reducible_cases(base: BaseMonad):
    """``(name, stream op, per-instant op, arity)`` for the snapshot-reducible operators."""
    from .stream import IN_L, IN_R, Tagged, cross, disjoint_union, sel_elem, sel_time, union_stream

    def f(x):
        return (x, 1)

    def p(x):
        return x != "b"

    def q(c):
        return len(list(base.elements(c))) >= 2

    empty = base.empty()
    return [
        ("map_stream", lambda s: map_stream(f, s), lambda c: base.map(f, c), 1),
        ("sel_elem", lambda s: sel_elem(p, s), lambda c: base.filter(p, c), 1),
        ("sel_time", lambda s: sel_time(q, s), lambda c: c if q(c) else empty, 1),
        ("cross", cross, base.cross, 2),
        ("union_stream", union_stream, base.combine, 2),
        ("disjoint_union", disjoint_union,
         lambda a, b: base.combine(base.map(lambda x: Tagged(IN_L, x), a),
                                   base.map(lambda y: Tagged(IN_R, y), b)), 2),
    ]


def suite_snapshot(trials: int = 100, domain: FiniteDomain = DEFAULT_DOMAIN, seed: int = 0) -> Iterator[dict]:
    from .windows import window_time

    rng = random.Random(seed)
    for b in (BAG, SET, MAYBE, SEQ):
        for name, op_s, op_b, arity in reducible_cases(b):
            res = LawResult(b.name, name, "snapshot . op = op_base . snapshot", exhaustive=False)
            for _ in range(trials):
                ins = [random_stream(b, domain, rng) for _ in range(arity)]
                rd = check_snapshot_reducible(op_s, op_b, ins)
                res.checked += 1
                if not rd.passed:
                    res.fail(f"t={rd.tick}", 3)
            yield res.to_json("snapshot")
    # negative control: windows are not snapshot-reducible
    res = LawResult("bag", "window_time(2)", "fails commutation on some instance", exhaustive=False)
    failures = 0
    for _ in range(trials):
        s = random_stream(BAG, domain, rng)
        res.checked += 1
        if not check_snapshot_reducible(lambda s: window_time(2, s), lambda c: c, [s]).passed:
            failures += 1
    res.passed = failures > 0
    if not res.passed:
        res.counterexamples.append("window_time(2) commuted on every instance")
    yield res.to_json("snapshot")


def suite_inverse(trials: int = 100, domain: FiniteDomain = DEFAULT_DOMAIN, seed: int = 0) -> Iterator[dict]:
    rng = random.Random(seed)
    for rep in (physical.EVENTS, physical.INTERVALS):
        fns = [random_stream(BAG, domain, rng).eval for _ in range(trials)]
        chk = check_right_inverse(rep.snapshot, rep.reconstruct, fns, domain)
        res = LawResult(rep.name, "right_inverse", "snapshot . reconstruct = id",
                        passed=chk.passed, checked=chk.checked, exhaustive=False)
        if not chk.passed:
            res.counterexamples.append(f"case {chk.case} t={chk.tick}")
        yield res.to_json("inverse")


def suite_derived(trials: int = 100, domain: FiniteDomain = DEFAULT_DOMAIN, seed: int = 0) -> Iterator[dict]:
    rng = random.Random(seed)
    for rep in (physical.EVENTS, physical.INTERVALS):
        ops = physical.derive_monadic(rep, domain)
        for op_name in ("map", "unit", "flatten"):
            res = LawResult(rep.name, f"derived_{op_name}", "agrees with reference through snapshot",
                            exhaustive=False)
            for _ in range(trials):
                res.checked += 1
                t_bad = _derived_case(op_name, ops, rep, domain, rng)
                if t_bad is not None:
                    res.fail(f"t={t_bad}", 3)
            yield res.to_json("derived")


def _derived_case(op_name, ops, rep, domain, rng):
    if op_name == "map":
        s = random_stream(BAG, domain, rng)
        f = FnTable({x: rng.choice(CARRIER) for x in CARRIER})
        got = ops.map(f, rep.reconstruct(s.eval, domain))
        ref = map_stream(f, s)
    elif op_name == "unit":
        x = rng.choice(CARRIER)
        got = ops.unit(x)
        ref = unit_stream(x, BAG, domain)
    else:
        inner = [random_stream(BAG, domain, rng) for _ in range(3)]
        phys = {id(s): rep.reconstruct(s.eval, domain) for s in inner}
        outer = random_stream(BAG, domain, rng, carrier=inner)
        got = ops.flatten(rep.reconstruct(lambda t: BAG.map(lambda s: phys[id(s)], outer(t)), domain))
        ref = flatten_stream(outer)
    for t in domain:
        if ops.snapshot(got, t) != ref(t):
            return t
    return None


def suite_future(trials: int = 100, domain: FiniteDomain = FiniteDomain(0, 11), seed: int = 0) -> Iterator[dict]:
    from .windows import window_future, window_time

    rng = random.Random(seed)
    for size in (1, 2, 3, 5):
        res = LawResult("bag", f"window_future({size})",
                        "future(t) = window_time(t + size - 1)", exhaustive=False)
        for _ in range(trials):
            s = random_stream(BAG, domain, rng)
            fut, win = window_future(size, s), window_time(size, s)
            for t in range(domain.first, domain.last - size + 2):
                res.checked += 1
                if fut(t) != win(t + size - 1):
                    res.fail(f"t={t}", 3)
        yield res.to_json("future")


def suite_kinds() -> Iterator[dict]:
    from .kinds import ET, EV, ST, StreamKind, join_kind

    table = {
        (ET, ET): ET, (ET, ST): ST, (ET, EV): EV,
        (ST, ST): ST, (ST, EV): EV, (EV, EV): EV,
    }
    kinds = list(StreamKind)
    checks = [
        ("join_table", all(join_kind(a, b) == c for (a, b), c in table.items()), len(table)),
        ("commutative", all(join_kind(a, b) == join_kind(b, a) for a in kinds for b in kinds), 9),
        ("associative", all(join_kind(join_kind(a, b), c) == join_kind(a, join_kind(b, c))
                            for a in kinds for b in kinds for c in kinds), 27),
    ]
    for law, ok, n in checks:
        yield LawResult("kinds", law, law, passed=ok, checked=n).to_json("kinds")


SUITES: dict[str, Callable[[], Iterator[dict]]] = {
    "monad": suite_monad,
    "mutation": suite_mutation,
    "monoid": suite_monoid,
    "snapshot": suite_snapshot,
    "inverse": suite_inverse,
    "derived": suite_derived,
    "future": suite_future,
    "kinds": suite_kinds,
}


def run_suites(names: Iterable[str]) -> Iterator[dict]:
    for name in names:
        try:
            suite = SUITES[name]
        except KeyError:
            raise ValueError(f"unknown law suite {name!r}; expected one of {sorted(SUITES)} or 'all'") from None
        yield from suite()
