"""Keyed evaluation of stream operators."""

from __future__ import annotations

from typing import Any, Callable, Hashable

from .errors import ContractViolation, KeyChangeError
from .stream import Stream

Operator = Callable[[Stream], Stream]


def observed_keys(split: Callable[[Any], tuple[Hashable, Any]], s: Stream) -> list[Hashable]:
    """Distinct keys over the whole domain.

    Sorted when the keys are mutually orderable, else in first-seen order;
    either way the result is deterministic for a given stream.
    """
    seen: dict[Hashable, None] = {}
    for _, c in s.items():
        for x in s.base.elements(c):
            seen.setdefault(split(x)[0], None)
    keys = list(seen)
    try:
        return sorted(keys)
    except TypeError:
        return keys


def key_substream(split, key: Hashable, s: Stream) -> Stream:
    """Values whose split key equals ``key``; empty elsewhere."""
    b = s.base
    empty = b.empty()

    def pick(x):
        k, v = split(x)
        return b.unit(v) if k == key else empty

    return Stream(b, s.domain, lambda t: b.bind(s(t), pick), name=f"key={key!r}")


def partition_with(
    split: Callable[[Any], tuple[Hashable, Any]],
    op: Operator,
    recombine: Callable[[tuple[Hashable, Any]], Any],
    s: Stream,
) -> Stream:
    """Run ``op`` separately on each key's values and union the recombined results."""
    b = s.base
    b.require_monoid("partition_with")
    keys = observed_keys(split, s)
    parts = []
    for k in keys:
        out = op(key_substream(split, k, s))
        parts.append((k, out))

    # op may change the container type (a window over maybe yields bags)
    rb = parts[0][1].base if parts else b
    if any(out.base is not rb for _, out in parts):
        raise ContractViolation("partition_with: op returned streams over different bases")
    rb.require_monoid("partition_with")

    def fn(t):
        acc = rb.empty()
        for k, out in parts:
            acc = rb.combine(acc, rb.map(lambda v, k=k: recombine((k, v)), out(t)))
        return acc

    return Stream(rb, s.domain, fn, name="partition_with")


def _reattach(kz):
    k, (k2, z) = kz
    if k2 != k:
        raise KeyChangeError(k, k2)
    return (k, z)


def distribute(op: Operator, s: Stream) -> Stream:
    """Request keyed evaluation of ``op`` over a stream of ``(key, value)`` pairs.

    Semantically the identity on ``op``; raises :class:`KeyChangeError` if
    ``op`` emits a pair whose key differs from its partition's key.
    """
    return partition_with(lambda kv: (kv[0], kv), op, _reattach, s)
