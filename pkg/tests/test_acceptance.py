"""Acceptance gate: twelve criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from snapstream import laws
from snapstream.base import BAG, MAYBE, Bag, Some
from snapstream.errors import KeyChangeError
from snapstream.generate import max_displacement, random_event_times, random_keyed_stream
from snapstream.kinds import ET, EV, ST, Node, infer_kind, join_kind
from snapstream.partition import distribute
from snapstream.patterns import match_pattern, parse_pattern
from snapstream.physical import IntervalTable, snapshot_intervals
from snapstream.stream import Stream, Tagged, map_stream, sel_elem, streams_equal
from snapstream.time import BiDomain, BiTime, FiniteDomain, closed_open
from snapstream.windows import bsort, filter_late, inversions, window_row, window_time

sys.path.insert(0, str(Path(__file__).resolve().parent))
from oracles import KIND_JOIN  # noqa: E402

ROOT = Path(__file__).resolve().parent.parent


def _all_pass(records):
    bad = [r for r in records if not r["passed"] or (r["suite"] != "mutation" and r["counterexamples"])]
    return not bad, bad


def criterion_1():
    start = time.perf_counter()
    monad = list(laws.suite_monad())
    mutation = list(laws.suite_mutation())
    elapsed = time.perf_counter() - start
    ok_m, bad_m = _all_pass(monad)
    names = {r["instance"] for r in monad}
    want = {"bag", "set", "maybe", "identity", "seq"}
    exhaustive_instances = want | {f"stream[{b}]" for b in want}
    missing = exhaustive_instances - names
    not_exhaustive = [(r["instance"], r["law"]) for r in monad
                      if r["instance"] in exhaustive_instances and not r["exhaustive"]]
    undetected = [r["instance"] for r in mutation if not r["passed"]]
    ok = ok_m and not missing and not not_exhaustive and not undetected and elapsed < 60
    return ok, (f"{len(monad)} law checks, failures={len(bad_m)}, non-exhaustive={not_exhaustive}, "
                f"mutants caught {len(mutation) - len(undetected)}/{len(mutation)}, {elapsed:.1f}s")


def criterion_2():
    recs = [r.to_json("monoid") for b in (laws.BAG, laws.SET, laws.MAYBE, laws.SEQ)
            for r in laws.check_monoid_laws(b, trials=1000)]
    ok, bad = _all_pass(recs)
    ok = ok and all(r["checked"] == 1000 for r in recs) and len(recs) == 12
    return ok, f"{len(recs)} checks x 1000 triples, failures={len(bad)}"


def criterion_3():
    recs = list(laws.suite_snapshot(trials=100))
    control = [r for r in recs if r["law"] == "window_time(2)"]
    ops = [r for r in recs if r["law"] != "window_time(2)"]
    covered = {r["law"] for r in ops}
    want = {"map_stream", "sel_elem", "sel_time", "cross", "union_stream", "disjoint_union"}
    ok = covered >= want and all(r["passed"] and r["checked"] == 100 for r in ops)
    ok = ok and len(control) == 1 and control[0]["passed"]
    return ok, f"{len(ops)} op/base pairs commute on 100 instances; window_time(2) control rejected={control[0]['passed']}"


def criterion_4():
    recs = list(laws.suite_inverse(trials=100))
    whole = IntervalTable((("e", closed_open(1, 5)),))
    split = IntervalTable((("e", closed_open(1, 3)), ("e", closed_open(3, 5))))
    same = all(snapshot_intervals(whole, t) == snapshot_intervals(split, t) for t in range(-2, 9))
    ok = all(r["passed"] and r["checked"] == 100 for r in recs) and len(recs) == 2 and same
    return ok, f"right inverse on 100 functions for {[r['instance'] for r in recs]}; split example identical={same}"


def criterion_5():
    recs = list(laws.suite_derived(trials=100))
    ok = len(recs) == 6 and all(r["passed"] and r["checked"] == 100 for r in recs)
    return ok, f"{len(recs)} derived operators x 100 cases agree through snapshot"


def criterion_6():
    recs = list(laws.suite_future(trials=100))
    sizes = sorted(int(r["law"].split("(")[1].rstrip(")")) for r in recs)
    ok = sizes == [1, 2, 3, 5] and all(r["passed"] for r in recs)
    return ok, f"shift identity exact for sizes {sizes}, {sum(r['checked'] for r in recs)} tick comparisons"


def criterion_7(trials: int = 100, seed: int = 7):
    rng = random.Random(seed)
    dom = FiniteDomain(0, 14)
    p = parse_pattern("a.a.a")
    compared = 0
    for _ in range(trials):
        values = {t: rng.randint(0, 3) for t in dom if rng.random() < 0.6}
        s = Stream.from_table(MAYBE, {t: Some(v) for t, v in values.items()}, dom)
        tagged = Stream.from_table(MAYBE, {t: Some(Tagged("a", v)) for t, v in values.items()}, dom)
        rows = window_row(3, s)
        for t, c in match_pattern(p, tagged).nonempty():
            [(value, n)] = list(c.items())
            contents = Bag([value[0], value[1][0], value[1][1]])
            compared += 1
            if n != 1 or contents != rows(t):
                return False, f"mismatch at t={t}"
    return compared > 0, f"{compared} emission instants over {trials} streams agree"


def criterion_8(trials: int = 100, seed: int = 8):
    rng = random.Random(seed)
    dom = FiniteDomain(0, 9)
    ops = {
        "map": lambda s: map_stream(lambda kv: (kv[0], kv[1] * 2 + 1), s),
        "sel": lambda s: sel_elem(lambda kv: kv[1] % 2 == 0, s),
        "window_time": lambda s: window_time(3, s),
    }
    for _ in range(trials):
        s = random_keyed_stream(BAG, dom, rng)
        for name, op in ops.items():
            if not streams_equal(distribute(op, s), op(s)):
                return False, f"distribute({name}) differs from {name}"
    s = Stream.from_values(BAG, {0: [("A", 1)]}, dom)
    try:
        distribute(lambda sub: map_stream(lambda kv: ("B", kv[1]), sub), s)(0)
    except KeyChangeError:
        raised = True
    else:
        raised = False
    return raised, f"{trials} keyed streams x {len(ops)} ops equal; key change raised={raised}"


def criterion_9():
    kinds = [ET, ST, EV]
    table_ok = all(join_kind(a, b).value == KIND_JOIN[(a.value, b.value)]
                   for a, b in itertools.product(kinds, repeat=2))
    comm = all(join_kind(a, b) == join_kind(b, a) for a, b in itertools.product(kinds, repeat=2))
    assoc = all(join_kind(join_kind(a, b), c) == join_kind(a, join_kind(b, c))
                for a, b, c in itertools.product(kinds, repeat=3))
    pipelines = [
        {"s": Node("source", kind=EV), "r": Node("unit_snapshot"), "o": Node("cross", ("s", "r"))},
        {"s": Node("source", kind=EV), "o": Node("window_time", ("s",))},
        {"a": Node("unit_snapshot"), "b": Node("source", kind=ET), "o": Node("union_stream", ("a", "b"))},
    ]
    inferred = [infer_kind(p)["o"] for p in pipelines]
    ok = table_ok and comm and assoc and inferred == [EV, ST, ET]
    return ok, f"table={table_ok} comm(9)={comm} assoc(27)={assoc} examples={[k.value for k in inferred]}"


def criterion_10(trials: int = 300, seed: int = 10):
    rng = random.Random(seed)
    sorted_cases = partial_cases = 0
    for _ in range(trials):
        n, d = rng.randint(2, 30), rng.randint(0, 6)
        events = random_event_times(rng, n, d)
        d = max_displacement(events)
        items = [(BiTime(e, a), a) for a, e in enumerate(events)]
        for slack in range(0, d + 3):
            out = [bt.event for bt, _ in bsort(slack, items)]
            if slack >= d:
                sorted_cases += 1
                if out != sorted(events):
                    return False, f"slack {slack} >= displacement {d} left {events} unsorted"
            else:
                partial_cases += 1
                if inversions(out) > inversions(events):
                    return False, f"slack {slack} increased inversions on {events}"
    return True, f"{sorted_cases} fully sorted, {partial_cases} under-slack cases never worse"


def criterion_11():
    lines = []
    for name in ("window_slide", "pattern_ab", "partitioned_window"):
        d = ROOT / "demo" / name
        rng = json.loads((d / "range.json").read_text())
        runs = []
        for _ in range(2):
            out = subprocess.run(
                [sys.executable, "-m", "snapstream", "run", "--pipeline", str(d / "pipeline.json"),
                 "--input", str(d / "events.jsonl"), "--from", str(rng["from"]), "--to", str(rng["to"])],
                capture_output=True, check=False)
            runs.append(out.stdout if out.returncode == 0 else None)
        golden = (d / "expected.jsonl").read_bytes()
        lines.append((name, runs[0] is not None and runs[0] == runs[1] == golden))
    return all(ok for _, ok in lines), ", ".join(f"{n}={'ok' if ok else 'DIFF'}" for n, ok in lines)


def criterion_12():
    dom = BiDomain(FiniteDomain(0, 19), FiniteDomain(0, 19))
    s = Stream(BAG, dom, lambda ea: Bag([ea]))
    f = filter_late(5, s)
    kept = dropped = 0
    for e, a in dom:
        present = f(BiTime(e, a)) == Bag([(e, a)])
        if a - e <= 5:
            kept += 1
            if not present:
                return False, f"({e},{a}) dropped"
        else:
            dropped += 1
            if f(BiTime(e, a)) != Bag():
                return False, f"({e},{a}) kept"
    return True, f"400 grid points: {kept} kept (a-e<=5), {dropped} dropped (a-e>=6)"


CRITERIA = {
    1: ("monad laws exhaustive + mutation", criterion_1),
    2: ("monoid laws on 1000 triples", criterion_2),
    3: ("snapshot-reducibility + window control", criterion_3),
    4: ("right inverse + split interval", criterion_4),
    5: ("derived physical operators", criterion_5),
    6: ("future-window shift identity", criterion_6),
    7: ("row window = a.a.a pattern", criterion_7),
    8: ("distribute = id, key change signalled", criterion_8),
    9: ("kind algebra + inference", criterion_9),
    10: ("bsort slack vs displacement", criterion_10),
    11: ("CLI golden files, byte-identical", criterion_11),
    12: ("late filter on 20x20 grid", criterion_12),
}


def _line(n, ok, detail):
    title = CRITERIA[n][0]
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {title} -- {detail}"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n][1]()
    with capsys.disabled():
        print("\n" + _line(n, ok, detail), end="")
    assert ok, detail


if __name__ == "__main__":
    failures = 0
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n][1]()
        failures += not ok
        print(_line(n, ok, detail))
    sys.exit(1 if failures else 0)
