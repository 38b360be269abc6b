from collections import Counter

import pytest
from hypothesis import given, strategies as st

from snapstream.base import BAG, IDENTITY, MAYBE, SEQ, SET, Bag, Identity, Seq, SetC, Some
from snapstream.errors import ContractViolation, NoMonoidError
from snapstream.stream import Stream, map_stream, sel_elem
from snapstream.time import BiDomain, BiTime, FiniteDomain, periodic
from snapstream.windows import (
    as_of, bsort, filter_late, inversions, linear_interpolation, resample, row_slide, slide,
    sliding_window, window_future, window_row, window_rowgen, window_taa, window_time,
)

from oracles import bsort_sim, count_inversions, counts, last_rows, table_of, window_ahead, window_past
from strategies import bag_tables, streams

DOM = FiniteDomain(0, 15)


def bag_stream(table, dom=DOM):
    return Stream.from_values(BAG, table, dom)


def maybe_stream(values, dom=DOM):
    return Stream.from_table(MAYBE, {t: Some(v) for t, v in values.items()}, dom)


# window_time


def test_window_time_example():
    s = bag_stream({1: "a", 2: "b"}, FiniteDomain(0, 5))
    w = window_time(2, s)
    assert w(2) == Bag("ab") and w(3) == Bag("b") and w(4) == Bag()


def test_window_of_one_tick_is_now():
    s = bag_stream({1: "a", 2: "bb"})
    assert window_time(1, s).to_table() == s.to_table()


def test_window_rejects_identity_and_bad_size():
    s = Stream.from_table(IDENTITY, {t: Identity(t) for t in DOM}, DOM)
    with pytest.raises(NoMonoidError):
        window_time(2, s)
    with pytest.raises(ValueError):
        window_time(0, bag_stream({}))


@given(bag_tables(), st.integers(1, 6))
def test_window_time_matches_oracle(table, size):
    got = table_of(window_time(size, bag_stream(table)))
    assert got == window_past(table, size, DOM.first, DOM.last)


@given(bag_tables(), st.integers(1, 6))
def test_window_future_matches_oracle(table, size):
    got = table_of(window_future(size, bag_stream(table)))
    assert got == window_ahead(table, size, DOM.first, DOM.last)


@pytest.mark.parametrize("base", [SET, SEQ], ids=lambda b: b.name)
@given(data=st.data())
def test_generic_window_path_matches_oracle(base, data):
    dom = FiniteDomain(0, 8)
    s = data.draw(streams(base, dom))
    size = data.draw(st.integers(1, 4))
    w = window_time(size, s)
    for t in dom:
        want = [x for u in range(max(t - size + 1, dom.first), t + 1) for x in s(u)]
        if base is SEQ:
            assert list(w(t)) == want  # time order preserved
        else:
            assert w(t) == SetC(want)


@given(bag_tables(), st.integers(1, 5))
def test_taa_projects_to_time_window(table, size):
    s = bag_stream(table)
    taa = window_taa(size, s)
    for t in DOM:
        assert all(t - size < u <= t and x in table[u] for u, x in taa(t))
    projected = map_stream(lambda ux: ux[1], taa)
    assert table_of(projected) == table_of(window_time(size, s))


def test_taa_example():
    s = bag_stream({1: [10], 2: [12]}, FiniteDomain(0, 4))
    assert window_taa(2, s)(2) == Bag([(1, 10), (2, 12)])
    assert window_taa(1, s)(2) == Bag([(2, 12)])


def test_taa_keeps_what_average_speed_needs():
    # positions with a lost packet between t=1 and t=5
    s = bag_stream({0: [0], 1: [10], 5: [50]})
    samples = sorted(window_taa(6, s)(5))
    (t0, p0), (t1, p1) = samples[0], samples[-1]
    timed = (p1 - p0) / (t1 - t0)
    positions = [p for _, p in samples]
    untimed = sum(b - a for a, b in zip(positions, positions[1:])) / (len(positions) - 1)
    assert timed == 10 and untimed == 25


# slides


def test_slide_example():
    s = bag_stream({0: "a", 1: "b", 2: "c"}, FiniteDomain(0, 3))
    assert slide(periodic(2, 0), s).to_table() == {0: Bag("a"), 2: Bag("c")}
    assert slide(lambda t: True, s).to_table() == s.to_table()


@given(bag_tables(), st.integers(1, 5), st.integers(1, 4), st.integers(0, 3))
def test_sliding_window_is_sampled_time_window(table, size, period, anchor):
    got = table_of(sliding_window(size, period, bag_stream(table), anchor))
    full = window_past(table, size, DOM.first, DOM.last)
    assert got == {t: c for t, c in full.items() if (t - anchor) % period == 0}


def test_slide_is_not_interchangeable_with_the_window():
    s = bag_stream({1: "a", 2: "b", 3: "c"}, FiniteDomain(0, 4))
    p = periodic(2)
    window_then_sample = table_of(slide(p, window_time(2, s)))
    sample_then_window = table_of(window_time(2, slide(p, s)))
    assert window_then_sample == {2: Counter("ab"), 4: Counter("c")}
    assert sample_then_window == {2: Counter("b"), 3: Counter("b")}


@given(bag_tables(), st.integers(1, 5), st.sets(st.sampled_from("abc")))
def test_element_selection_commutes_with_window(table, size, keep):
    s = bag_stream(table)
    a = window_time(size, sel_elem(lambda x: x in keep, s))
    b = sel_elem(lambda x: x in keep, window_time(size, s))
    assert table_of(a) == table_of(b)


# row windows


def test_window_row_example():
    w = window_row(2, maybe_stream({1: "a", 3: "b", 4: "c"}))
    assert w(4) == Bag("bc") and w(3) == Bag("ab") and w(2) == Bag("a") and w(0) == Bag()


def test_window_row_needs_sequential_input():
    with pytest.raises(ContractViolation):
        window_row(2, bag_stream({}))


@given(st.dictionaries(st.integers(0, 15), st.sampled_from("abc")), st.integers(1, 4))
def test_window_row_matches_oracle(values, n):
    assert table_of(window_row(n, maybe_stream(values))) == last_rows(values, n, DOM.first, DOM.last)


def test_window_rowgen_example():
    s = bag_stream({1: "a", 3: "bc"}, FiniteDomain(0, 4))
    assert window_rowgen(2, s)(3) == Bag([Bag("a"), Bag("bc")])
    assert window_rowgen(2, bag_stream({})).to_table() == {}


@given(st.dictionaries(st.integers(0, 15), st.sampled_from("abc")), st.integers(1, 4))
def test_window_rowgen_on_maybe_is_row_window_wrapped(values, n):
    s = maybe_stream(values)
    gen, row = window_rowgen(n, s), window_row(n, s)
    for t in DOM:
        assert Bag(c.value for c in gen(t)) == row(t)


def test_row_slide_example():
    s = bag_stream({1: "a", 3: "b", 4: "c", 7: "d"})
    assert sorted(row_slide(2, s).to_table()) == [3, 7]
    assert row_slide(1, s).to_table() == s.to_table()
    assert row_slide(3, bag_stream({})).to_table() == {}
    with pytest.raises(ValueError):
        row_slide(0, s)


# future windows


@given(bag_tables(), st.sampled_from([1, 2, 3, 5]))
def test_future_window_shift_identity(table, size):
    s = bag_stream(table)
    fut, past = window_future(size, s), window_time(size, s)
    for t in range(DOM.first, DOM.last - size + 2):
        assert fut(t) == past(t + size - 1)
    assert window_future(3, s)(DOM.last) == s(DOM.last)  # clipped at the end


# resample


def test_linear_interpolation():
    assert linear_interpolation(Bag([(0, 10), (4, 18)]), 2) == 14
    assert linear_interpolation(Bag([(0, 10), (2, 7), (4, 18)]), 2) == 7
    assert linear_interpolation(Bag([(0, 10)]), 3) == 10
    assert linear_interpolation(Bag([(1, 2), (1, 4), (3, 9)]), 1) == 3
    assert linear_interpolation(Bag(), 3) is None


def test_resample_example():
    dom = FiniteDomain(0, 6)
    s = bag_stream({0: [10], 4: [18]}, dom)
    ref = bag_stream({2: ["x"]}, dom)
    assert resample(ref, 4, s).to_table() == {2: Bag([14])}
    assert resample(bag_stream({}, dom), 4, s).to_table() == {}
    # nothing within reach: empty, not an error
    assert resample(bag_stream({6: ["x"]}, dom), 1, s).to_table() == {}


# bitemporal


def test_filter_late_boundary():
    dom = BiDomain(FiniteDomain(8, 12), FiniteDomain(8, 20))
    s = Stream(BAG, dom, lambda ea: Bag(["v"]))
    f = filter_late(5, s)
    assert f(BiTime(10, 14)) == Bag("v") and f(BiTime(10, 15)) == Bag("v")
    assert f(BiTime(10, 16)) == Bag()
    with pytest.raises(ContractViolation):
        filter_late(5, bag_stream({}))


def test_as_of_collects_arrivals_up_to_cutoff():
    dom = BiDomain(FiniteDomain(0, 2), FiniteDomain(0, 4))
    table = {BiTime(1, 1): Bag("a"), BiTime(1, 3): Bag("b"), BiTime(2, 4): Bag("c")}
    s = Stream.from_table(BAG, table, dom)
    assert as_of(3, s).to_table() == {1: Bag("ab")}
    assert as_of(4, s).to_table() == {1: Bag("ab"), 2: Bag("c")}


# bsort


def _items(events):
    return [(BiTime(e, a), f"x{a}") for a, e in enumerate(events)]


def test_bsort_examples():
    def order(slack, events):
        return [bt.event for bt, _ in bsort(slack, _items(events))]

    assert order(1, [1, 3, 2, 4]) == [1, 2, 3, 4]
    assert order(0, [3, 1, 2]) == [3, 1, 2]
    # the buffer holds 3 and 1, emits 1, then holds 3 and 2 and emits 2
    assert order(1, [3, 1, 2]) == bsort_sim([3, 1, 2], 1) == [1, 2, 3]
    assert order(1, [3, 4, 1, 2]) == bsort_sim([3, 4, 1, 2], 1) == [3, 1, 2, 4]


@given(st.lists(st.integers(0, 9), max_size=14), st.integers(0, 5))
def test_bsort_matches_buffer_simulation(events, slack):
    out = bsort(slack, _items(events))
    assert [bt.event for bt, _ in out] == bsort_sim(events, slack)
    assert sorted(x for _, x in out) == sorted(x for _, x in _items(events))


@given(st.lists(st.integers(0, 20), max_size=30))
def test_inversion_count_matches_merge_sort(xs):
    assert inversions(xs) == count_inversions(xs)
