"""Seeded random containers and streams for law checks and tests."""

from __future__ import annotations

import itertools
import random
from typing import Any, Sequence

from .base import BAG, IDENTITY, MAYBE, SEQ, SET, NOTHING, Bag, BaseMonad, Identity, Seq, SetC, Some
from .stream import Stream
from .time import FiniteDomain

CARRIER = ("a", "b", "c")


def small_containers(base: BaseMonad, carrier: Sequence[Any], max_size: int = 2) -> list[Any]:
    """Every container of ``base`` holding at most ``max_size`` payloads from ``carrier``."""
    carrier = list(carrier)
    if base is IDENTITY:
        return [Identity(x) for x in carrier]
    if base is MAYBE:
        return [NOTHING] + [Some(x) for x in carrier]
    out: list[Any] = []
    for k in range(max_size + 1):
        if base is BAG:
            out.extend(Bag(c) for c in itertools.combinations_with_replacement(carrier, k))
        elif base is SET:
            out.extend(SetC(c) for c in itertools.combinations(carrier, k))
        elif base is SEQ:
            out.extend(Seq(c) for c in itertools.product(carrier, repeat=k))
        else:
            raise ValueError(f"no enumeration for base {base.name}")
    return out


def random_container(base: BaseMonad, rng: random.Random, carrier: Sequence[Any] = CARRIER,
                     max_size: int = 3) -> Any:
    if base is IDENTITY:
        return Identity(rng.choice(carrier))
    if base is MAYBE:
        return NOTHING if rng.random() < 0.4 else Some(rng.choice(carrier))
    xs = [rng.choice(carrier) for _ in range(rng.randint(0, max_size))]
    return base.of(xs)


def random_table(base: BaseMonad, dom: FiniteDomain, rng: random.Random,
                 carrier: Sequence[Any] = CARRIER, density: float = 0.6, max_size: int = 3) -> dict:
    if base is IDENTITY:
        return {t: random_container(base, rng, carrier) for t in dom}
    return {
        t: random_container(base, rng, carrier, max_size)
        for t in dom
        if rng.random() < density
    }


def random_stream(base: BaseMonad, dom: FiniteDomain, rng: random.Random,
                  carrier: Sequence[Any] = CARRIER, density: float = 0.6, max_size: int = 3) -> Stream:
    return Stream.from_table(base, random_table(base, dom, rng, carrier, density, max_size), dom)


def random_numeric_bag_stream(dom: FiniteDomain, rng: random.Random, density: float = 0.5,
                              lo: int = 0, hi: int = 9) -> Stream:
    table = {}
    for t in dom:
        if rng.random() < density:
            table[t] = Bag(rng.randint(lo, hi) for _ in range(rng.randint(1, 3)))
    return Stream.from_table(BAG, table, dom)


def random_keyed_stream(base: BaseMonad, dom: FiniteDomain, rng: random.Random,
                        keys: Sequence[Any] = ("A", "B", "C"), values: Sequence[Any] = range(5),
                        density: float = 0.6) -> Stream:
    carrier = [(k, v) for k in keys for v in values]
    return random_stream(base, dom, rng, carrier, density)


def random_event_times(rng: random.Random, n: int, displacement: int) -> list[int]:
    """A permutation of ``0..n-1`` in which no value arrives more than
    ``displacement`` positions after its sorted rank."""
    unplaced = list(range(n))
    out = []
    for i in range(n):
        if unplaced[0] <= i - displacement:
            pick = 0
        else:
            hi = 0
            while hi + 1 < len(unplaced) and unplaced[hi + 1] <= i + displacement:
                hi += 1
            pick = rng.randint(0, hi)
        out.append(unplaced.pop(pick))
    return out


def max_displacement(times: Sequence[int]) -> int:
    """Largest number of positions any element arrives after its sorted rank."""
    ranked = sorted(range(len(times)), key=lambda i: (times[i], i))
    rank = {i: r for r, i in enumerate(ranked)}
    return max((i - rank[i] for i in range(len(times))), default=0)
