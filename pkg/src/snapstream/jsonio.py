"""JSON conversion for payloads and containers.

Incoming JSON arrays become tuples and objects become :class:`Record`, so
every payload is hashable.  Rendering is canonical: bags and sets are sorted
by the canonical JSON text of their elements, so output is byte-stable.
"""

from __future__ import annotations

import json
from typing import Any

from .base import Bag, Identity, Seq, SetC, Some, NOTHING
from .patterns import ABSENT, Left, Present, Right
from .stream import Tagged


class Record(tuple):
    """Hashable stand-in for a JSON object: a tuple of sorted ``(key, value)`` pairs."""

    __slots__ = ()

    def __new__(cls, mapping: dict) -> "Record":
        return super().__new__(cls, sorted(mapping.items()))

    def get(self, key: str, default: Any = None) -> Any:
        for k, v in self:
            if k == key:
                return v
        return default

    def __getitem__(self, key):
        if isinstance(key, str):
            for k, v in tuple.__iter__(self):
                if k == key:
                    return v
            raise KeyError(key)
        return tuple.__getitem__(self, key)

    def __repr__(self) -> str:
        return "Record(" + repr(dict(self)) + ")"


def freeze(v: Any) -> Any:
    if isinstance(v, list):
        return tuple(freeze(x) for x in v)
    if isinstance(v, dict):
        return Record({k: freeze(x) for k, x in v.items()})
    return v


def canonical(v: Any) -> str:
    return json.dumps(v, sort_keys=True, separators=(",", ":"))


def to_json(v: Any) -> Any:
    if isinstance(v, Bag):
        pairs = [[to_json(x), n] for x, n in v.items()]
        return sorted(pairs, key=lambda p: canonical(p[0]))
    if isinstance(v, SetC):
        return sorted((to_json(x) for x in v), key=canonical)
    if isinstance(v, Seq):
        return [to_json(x) for x in v]
    if isinstance(v, (Some, Identity)):
        return to_json(v.value)
    if v is NOTHING or v is ABSENT:
        return None
    if isinstance(v, Record):
        return {k: to_json(x) for k, x in tuple.__iter__(v)}
    if isinstance(v, tuple):
        return [to_json(x) for x in v]
    if isinstance(v, Tagged):
        return {"tag": to_json(v.tag), "value": to_json(v.payload)}
    if isinstance(v, Left):
        return {"left": to_json(v.value)}
    if isinstance(v, Right):
        return {"right": to_json(v.value)}
    if isinstance(v, Present):
        return {"present": to_json(v.value)}
    if v is None or isinstance(v, (bool, int, float, str)):
        return v
    raise TypeError(f"cannot render {type(v).__name__} as JSON: {v!r}")
