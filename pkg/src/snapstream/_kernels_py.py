"""Pure-Python kernels.  ``_ckernels.pyx`` mirrors these signatures exactly."""

import heapq


def sliding_bag_counts(ticks, size):
    """Sum count-dicts over the trailing window ``[i - size + 1, i]``.

    ``ticks`` is a list of ``{payload: count}`` dicts, one per consecutive
    tick.  Returns one dict per tick.  Runs in time linear in the total
    number of (payload, count) entries, independent of ``size``.
    """
    if size < 1:
        raise ValueError("window size must be >= 1")
    out = []
    acc = {}
    for i, cur in enumerate(ticks):
        for x, n in cur.items():
            acc[x] = acc.get(x, 0) + n
        j = i - size
        if j >= 0:
            for x, n in ticks[j].items():
                left = acc[x] - n
                if left:
                    acc[x] = left
                else:
                    del acc[x]
        out.append(dict(acc))
    return out


def layer_runs(counts):
    """Decompose a step function of multiplicities into stacked runs.

    Returns sorted ``(start, end)`` index pairs (inclusive) such that the
    number of runs covering index ``i`` equals ``counts[i]``, and each run is
    maximal for its layer.
    """
    runs = []
    open_starts = []
    for i, c in enumerate(counts):
        if c < 0:
            raise ValueError("negative multiplicity")
        k = len(open_starts)
        if c > k:
            open_starts.extend([i] * (c - k))
        elif c < k:
            for _ in range(k - c):
                runs.append((open_starts.pop(), i - 1))
    end = len(counts) - 1
    while open_starts:
        runs.append((open_starts.pop(), end))
    runs.sort()
    return runs


def bsort_order(events, slack):
    """Emission order of a bounded reorder buffer holding ``slack + 1`` items.

    Each arrival is pushed; whenever the buffer exceeds ``slack`` items the
    smallest event time (earliest arrival on ties) is emitted.  Returns input
    indices in emission order.
    """
    if slack < 0:
        raise ValueError("slack must be >= 0")
    heap = []
    order = []
    for i, e in enumerate(events):
        heapq.heappush(heap, (e, i))
        if len(heap) > slack:
            order.append(heapq.heappop(heap)[1])
    while heap:
        order.append(heapq.heappop(heap)[1])
    return order
