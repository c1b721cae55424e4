# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive-search kernels.

Same contracts and same reported witnesses as ``_kernels_py``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

BACKEND = "cython"

ctypedef cnp.int64_t i64


cdef inline i64 _ipow(i64 base, int e) nogil:
    cdef i64 r = 1
    cdef int k
    for k in range(e):
        r *= base
    return r


def latin_violation(table, int m, int n):
    cdef const i64[::1] t = np.ascontiguousarray(table, dtype=np.int64).reshape(-1)
    cdef int axis, pos
    cdef i64 stride, outer, inner, hi, lo, base, stamp = 0
    cdef i64 v
    cdef cnp.ndarray[i64, ndim=1] seen_arr = np.full(max(m, 1), -1, dtype=np.int64)
    cdef i64[::1] seen = seen_arr
    for axis in range(n):
        stride = _ipow(m, n - 1 - axis)
        outer = _ipow(m, axis)
        for hi in range(outer):
            for lo in range(stride):
                base = hi * stride * m + lo
                stamp += 1
                for pos in range(m):
                    v = t[base + pos * stride]
                    if seen[v] == stamp:
                        coords = []
                        rest = hi
                        for _ in range(axis):
                            coords.append(int(rest % m))
                            rest //= m
                        coords.reverse()
                        tail = []
                        rest = lo
                        for _ in range(n - 1 - axis):
                            tail.append(int(rest % m))
                            rest //= m
                        tail.reverse()
                        return axis, tuple(coords + [pos] + tail), int(v)
                    seen[v] = stamp
    return None


cdef inline i64 _apply(const i64[::1] t, i64* args, int n, i64 m) nogil:
    cdef i64 idx = 0
    cdef int k
    for k in range(n):
        idx = idx * m + args[k]
    return t[idx]


def assoc_violation(table, int m, int n):
    cdef const i64[::1] t = np.ascontiguousarray(table, dtype=np.int64).reshape(-1)
    cdef int k = 2 * n - 1
    cdef int p, q, j
    cdef i64 first, val, inner
    cdef i64* x = <i64*> malloc(k * sizeof(i64))
    cdef i64* outer = <i64*> malloc(n * sizeof(i64))
    cdef bint done = False
    try:
        for q in range(k):
            x[q] = 0
        while not done:
            first = -1
            for p in range(n):
                inner = _apply(t, x + p, n, m)
                for q in range(p):
                    outer[q] = x[q]
                outer[p] = inner
                for q in range(p + 1, n):
                    outer[q] = x[q + n - 1]
                val = _apply(t, outer, n, m)
                if p == 0:
                    first = val
                elif val != first:
                    wit = [int(x[q]) for q in range(k)]
                    return tuple(wit), 0, p
            j = k - 1
            while j >= 0:
                x[j] += 1
                if x[j] < m:
                    break
                x[j] = 0
                j -= 1
            if j < 0:
                done = True
        return None
    finally:
        free(x)
        free(outer)


cdef inline i64 _hom_fail(const i64[::1] src, const i64[::1] tgt, const i64[::1] f, int n,
                          i64 ms, i64 mt, i64 cells, i64* digits) nogil:
    """Index of the first failing n-tuple, or -1."""
    cdef i64 c, idx
    cdef int k, j
    for k in range(n):
        digits[k] = 0
    for c in range(cells):
        idx = 0
        for k in range(n):
            idx = idx * mt + f[digits[k]]
        if f[src[c]] != tgt[idx]:
            return c
        j = n - 1
        while j >= 0:
            digits[j] += 1
            if digits[j] < ms:
                break
            digits[j] = 0
            j -= 1
    return -1


def hom_violation(src, tgt, fmap, int ms, int mt, int n):
    cdef const i64[::1] sa = np.ascontiguousarray(src, dtype=np.int64).reshape(-1)
    cdef const i64[::1] ta = np.ascontiguousarray(tgt, dtype=np.int64).reshape(-1)
    cdef const i64[::1] fa = np.ascontiguousarray(fmap, dtype=np.int64).reshape(-1)
    cdef i64* digits = <i64*> malloc(max(n, 1) * sizeof(i64))
    cdef i64 c
    try:
        c = _hom_fail(sa, ta, fa, n, ms, mt, _ipow(ms, n), digits)
    finally:
        free(digits)
    if c < 0:
        return None
    return tuple(int(v) for v in np.unravel_index(c, (ms,) * n))


def enumerate_hom_maps(src, tgt, int ms, int mt, int n):
    cdef const i64[::1] s = np.ascontiguousarray(src, dtype=np.int64).reshape(-1)
    cdef const i64[::1] tt = np.ascontiguousarray(tgt, dtype=np.int64).reshape(-1)
    cdef cnp.ndarray[i64, ndim=1] fa = np.zeros(max(ms, 1), dtype=np.int64)
    cdef i64[::1] f = fa
    cdef i64 cells = _ipow(ms, n)
    cdef i64* digits = <i64*> malloc(max(n, 1) * sizeof(i64))
    cdef int j
    out = []
    try:
        while True:
            if _hom_fail(s, tt, f, n, ms, mt, cells, digits) < 0:
                out.append(fa[:ms].copy())
            j = ms - 1
            while j >= 0:
                f[j] += 1
                if f[j] < mt:
                    break
                f[j] = 0
                j -= 1
            if j < 0:
                break
    finally:
        free(digits)
    if not out:
        return np.zeros((0, ms), dtype=np.int64)
    return np.stack(out).astype(np.int64)
