# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels; behaviour must match ``_kernels_py`` exactly."""

from libc.stdlib cimport malloc, free


def sliding_bag_counts(list ticks, Py_ssize_t size):
    if size < 1:
        raise ValueError("window size must be >= 1")
    cdef list out = []
    cdef dict acc = {}
    cdef dict cur
    cdef Py_ssize_t i, j, n_ticks = len(ticks)
    cdef long long n, left
    for i in range(n_ticks):
        cur = <dict>ticks[i]
        for x, v in cur.items():
            n = v
            acc[x] = <long long>acc.get(x, 0) + n
        j = i - size
        if j >= 0:
            for x, v in (<dict>ticks[j]).items():
                left = <long long>acc[x] - <long long>v
                if left:
                    acc[x] = left
                else:
                    del acc[x]
        out.append(acc.copy())
    return out


def layer_runs(counts):
    cdef Py_ssize_t n = len(counts)
    cdef Py_ssize_t i, k = 0, c, top
    cdef list runs = []
    cdef long long total = 0
    if n == 0:
        return runs
    for v in counts:
        if v < 0:
            raise ValueError("negative multiplicity")
        if v > total:
            total = v
    cdef Py_ssize_t *starts = <Py_ssize_t *>malloc((total + 1) * sizeof(Py_ssize_t))
    if starts == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            c = counts[i]
            if c > k:
                while k < c:
                    starts[k] = i
                    k += 1
            elif c < k:
                while k > c:
                    k -= 1
                    runs.append((starts[k], i - 1))
        while k > 0:
            k -= 1
            runs.append((starts[k], n - 1))
    finally:
        free(starts)
    runs.sort()
    return runs


cdef inline bint _less(long long *ev, Py_ssize_t *idx, Py_ssize_t a, Py_ssize_t b) nogil:
    if ev[a] != ev[b]:
        return ev[a] < ev[b]
    return idx[a] < idx[b]


def bsort_order(events, Py_ssize_t slack):
    if slack < 0:
        raise ValueError("slack must be >= 0")
    cdef Py_ssize_t n = len(events)
    cdef Py_ssize_t cap = min(slack + 1, n) + 1
    cdef long long *ev = <long long *>malloc(cap * sizeof(long long))
    cdef Py_ssize_t *idx = <Py_ssize_t *>malloc(cap * sizeof(Py_ssize_t))
    cdef Py_ssize_t size = 0, i, pos, parent, child, best
    cdef long long te
    cdef Py_ssize_t ti
    cdef list order = []
    if ev == NULL or idx == NULL:
        free(ev)
        free(idx)
        raise MemoryError()
    try:
        i = 0
        while i < n or size > 0:
            if i < n:
                # sift up
                pos = size
                ev[pos] = events[i]
                idx[pos] = i
                size += 1
                while pos > 0:
                    parent = (pos - 1) // 2
                    if _less(ev, idx, pos, parent):
                        te = ev[pos]; ev[pos] = ev[parent]; ev[parent] = te
                        ti = idx[pos]; idx[pos] = idx[parent]; idx[parent] = ti
                        pos = parent
                    else:
                        break
                i += 1
                if size <= slack:
                    continue
            order.append(idx[0])
            size -= 1
            ev[0] = ev[size]
            idx[0] = idx[size]
            pos = 0
            while True:
                child = 2 * pos + 1
                if child >= size:
                    break
                best = child
                if child + 1 < size and _less(ev, idx, child + 1, child):
                    best = child + 1
                if _less(ev, idx, best, pos):
                    te = ev[pos]; ev[pos] = ev[best]; ev[best] = te
                    ti = idx[pos]; idx[pos] = idx[best]; idx[best] = ti
                    pos = best
                else:
                    break
    finally:
        free(ev)
        free(idx)
    return order
