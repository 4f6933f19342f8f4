# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled DP kernels. Mirrors _pykernels exactly; the Python fallback
defines the semantics, this file only buys speed."""

from libc.stdlib cimport free, malloc


cdef int *_to_ints(seq, Py_ssize_t n) except NULL:
    cdef int *buf = <int *> malloc(n * sizeof(int) if n > 0 else sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = seq[i]
    return buf


def lcs_length(a, b):
    """Length of the longest common subsequence of two id sequences."""
    cdef Py_ssize_t n = len(a), m = len(b)
    if n == 0 or m == 0:
        return 0
    cdef int *av = _to_ints(a, n)
    cdef int *bv = _to_ints(b, m)
    cdef int *prev = <int *> malloc((m + 1) * sizeof(int))
    cdef int *cur = <int *> malloc((m + 1) * sizeof(int))
    if prev == NULL or cur == NULL:
        free(av); free(bv)
        if prev != NULL: free(prev)
        if cur != NULL: free(cur)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef int ai, pj, cj
    cdef int *tmp
    for j in range(m + 1):
        prev[j] = 0
    try:
        for i in range(1, n + 1):
            ai = av[i - 1]
            cur[0] = 0
            for j in range(1, m + 1):
                if ai == bv[j - 1]:
                    cur[j] = prev[j - 1] + 1
                else:
                    pj = prev[j]
                    cj = cur[j - 1]
                    cur[j] = pj if pj >= cj else cj
            tmp = prev; prev = cur; cur = tmp
        return prev[m]
    finally:
        free(av); free(bv); free(prev); free(cur)


def edit_counts(a, b):
    """Minimal unit-cost edit script turning ``a`` into ``b``.

    Returns (substitutions, deletions, insertions); backtrace prefers
    substitution, then deletion, then insertion.
    """
    cdef Py_ssize_t n = len(a), m = len(b)
    cdef int *av = _to_ints(a, n)
    cdef int *bv = _to_ints(b, m)
    cdef Py_ssize_t width = m + 1
    cdef int *dist = <int *> malloc((n + 1) * width * sizeof(int))
    if dist == NULL:
        free(av); free(bv)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef int ai, best, cand, diag_cost
    cdef int subs = 0, dels = 0, ins = 0
    try:
        dist[0] = 0
        for j in range(1, m + 1):
            dist[j] = j
        for i in range(1, n + 1):
            dist[i * width] = i
            ai = av[i - 1]
            for j in range(1, m + 1):
                if ai == bv[j - 1]:
                    dist[i * width + j] = dist[(i - 1) * width + j - 1]
                else:
                    best = dist[(i - 1) * width + j - 1]
                    cand = dist[(i - 1) * width + j]
                    if cand < best:
                        best = cand
                    cand = dist[i * width + j - 1]
                    if cand < best:
                        best = cand
                    dist[i * width + j] = best + 1
        i = n; j = m
        while i > 0 or j > 0:
            if i > 0 and j > 0:
                diag_cost = 0 if av[i - 1] == bv[j - 1] else 1
                if dist[i * width + j] == dist[(i - 1) * width + j - 1] + diag_cost:
                    subs += diag_cost
                    i -= 1
                    j -= 1
                    continue
            if i > 0 and dist[i * width + j] == dist[(i - 1) * width + j] + 1:
                dels += 1
                i -= 1
                continue
            ins += 1
            j -= 1
        return subs, dels, ins
    finally:
        free(av); free(bv); free(dist)
