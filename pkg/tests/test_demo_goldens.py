"""The bundled golden files, recomputed from their inputs without the library."""

import json
from collections import Counter
from pathlib import Path

DEMO = Path(__file__).resolve().parent.parent / "demo"


def load(name):
    d = DEMO / name
    events = [json.loads(x) for x in (d / "events.jsonl").read_text().splitlines() if x.strip()]
    rng = json.loads((d / "range.json").read_text())
    golden = [json.loads(x) for x in (d / "expected.jsonl").read_text().splitlines()]
    return json.loads((d / "pipeline.json").read_text()), events, range(rng["from"], rng["to"] + 1), golden


def bag_json(c: Counter):
    return sorted(([v, n] for v, n in c.items()), key=lambda p: json.dumps(p[0], sort_keys=True))


def test_window_slide_golden():
    cfg, events, ticks, golden = load("window_slide")
    size, period = cfg["stages"][0]["size"], cfg["stages"][1]["period"]
    want = []
    for t in ticks:
        c = Counter(e["value"] for e in events if t - size < e["t"] <= t)
        if c and t % period == 0:
            want.append({"t": t, "out": bag_json(c)})
    assert golden == want and len(want) == 4


def test_pattern_ab_golden():
    _, events, ticks, golden = load("pattern_ab")
    relevant = sorted((e for e in events if e["tag"] in "ab"), key=lambda e: e["t"])
    want = []
    for first, second in zip(relevant, relevant[1:]):
        if first["tag"] == "a" and second["tag"] == "b":
            want.append({"t": second["t"], "out": [[[first["value"], second["value"]], 1]]})
    assert golden == want and len(want) == 3


def test_partitioned_window_golden():
    cfg, events, ticks, golden = load("partitioned_window")
    size = cfg["stages"][0]["stages"][0]["size"]
    want = []
    for t in ticks:
        per_key = Counter(e["key"] for e in events if t - size < e["t"] <= t)
        if per_key:
            want.append({"t": t, "out": bag_json(Counter({(k, n): 1 for k, n in per_key.items()}))})
    want = [{"t": r["t"], "out": [[list(v), n] for v, n in r["out"]]} for r in want]
    assert golden == want
