import pytest
from hypothesis import given, strategies as st

from snapstream.time import (
    EMPTY, BiDomain, BiTime, FiniteDomain, TimeInterval, closed_open, interval,
    interval_members, open_closed, periodic,
)


def test_open_bounds_normalize_to_closed():
    assert open_closed(0, 5) == TimeInterval(1, 5)
    assert closed_open(1, 5) == TimeInterval(1, 4)
    assert interval(2, 4, False, False) == TimeInterval(3, 3)


def test_empty_intervals_collapse():
    assert closed_open(3, 3) is EMPTY or closed_open(3, 3) == EMPTY
    assert TimeInterval(5, 2) == EMPTY
    assert len(EMPTY) == 0 and list(EMPTY) == []


@given(st.integers(-20, 20), st.integers(-20, 20), st.booleans(), st.booleans())
def test_interval_membership_matches_bounds(lo, hi, lc, hc):
    iv = interval(lo, hi, lc, hc)
    for t in range(-25, 26):
        inside = (lo <= t if lc else lo < t) and (t <= hi if hc else t < hi)
        assert (t in iv) == inside


def test_domain_basics():
    d = FiniteDomain(3, 6)
    assert list(d) == [3, 4, 5, 6] and len(d) == 4
    assert 3 in d and 7 not in d and "3" not in d
    assert d.index(5) == 2
    assert d.clip(TimeInterval(0, 4)) == TimeInterval(3, 4)
    assert d.clip(TimeInterval(8, 9)) == EMPTY
    assert interval_members(open_closed(-1, 4), d) == [3, 4]


def test_domain_rejects_reversed_bounds():
    with pytest.raises(ValueError):
        FiniteDomain(2, 1)


def test_bitime_and_bidomain():
    bt = BiTime(3, 7)
    assert bt.lateness == 4
    bd = BiDomain(FiniteDomain(0, 1), FiniteDomain(5, 6))
    assert list(bd) == [(0, 5), (0, 6), (1, 5), (1, 6)]
    assert len(bd) == 4 and (1, 6) in bd and (2, 6) not in bd


def test_periodic():
    p = periodic(5, anchor=2)
    assert [t for t in range(-8, 13) if p(t)] == [-8, -3, 2, 7, 12]
    with pytest.raises(ValueError):
        periodic(0)
