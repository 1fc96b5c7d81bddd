# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled closure kernel (int64).  Mirrors ``_pykernel`` exactly.

The caller guarantees every intermediate fits in a signed 64-bit integer.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t, uint8_t
from libc.stdlib cimport calloc, malloc, free

cnp.import_array()


cdef inline uint64_t _mix(int64_t x, int64_t y) nogil:
    # splitmix64 finalizer over a combined word
    cdef uint64_t h = <uint64_t>x * 0x9E3779B97F4A7C15ULL ^ <uint64_t>y
    h ^= h >> 30
    h *= 0xBF58476D1CE4E5B9ULL
    h ^= h >> 27
    h *= 0x94D049BB133111EBULL
    h ^= h >> 31
    return h


cdef struct PairSet:
    int64_t *kx
    int64_t *ky
    uint8_t *used
    uint64_t mask


cdef int _pairset_init(PairSet *s, Py_ssize_t expected) noexcept nogil:
    cdef uint64_t cap = 16
    while cap < <uint64_t>(2 * expected + 16):
        cap <<= 1
    s.mask = cap - 1
    s.kx = <int64_t *>malloc(cap * sizeof(int64_t))
    s.ky = <int64_t *>malloc(cap * sizeof(int64_t))
    s.used = <uint8_t *>calloc(cap, sizeof(uint8_t))
    if s.kx == NULL or s.ky == NULL or s.used == NULL:
        return -1
    return 0


cdef void _pairset_free(PairSet *s) noexcept nogil:
    free(s.kx)
    free(s.ky)
    free(s.used)


cdef inline bint _pairset_add(PairSet *s, int64_t x, int64_t y) noexcept nogil:
    """Insert; return True if the pair was absent."""
    cdef uint64_t i = _mix(x, y) & s.mask
    while s.used[i]:
        if s.kx[i] == x and s.ky[i] == y:
            return False
        i = (i + 1) & s.mask
    s.used[i] = 1
    s.kx[i] = x
    s.ky[i] = y
    return True


def line_keys(xs, ys, int64_t dr, int64_t dc):
    cdef cnp.int64_t[::1] x = np.ascontiguousarray(xs, dtype=np.int64)
    cdef cnp.int64_t[::1] y = np.ascontiguousarray(ys, dtype=np.int64)
    cdef Py_ssize_t n = x.shape[0], i
    out = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = dr * y[i] - dc * x[i]
    return np.unique(out).tolist()


def new_intersections(xs, ys, int64_t scale, tasks):
    cdef cnp.int64_t[::1] x = np.ascontiguousarray(xs, dtype=np.int64)
    cdef cnp.int64_t[::1] y = np.ascontiguousarray(ys, dtype=np.int64)
    cdef Py_ssize_t n = x.shape[0], i, j, k, na, nb, total = 0, count = 0
    cdef cnp.int64_t[::1] al, be
    cdef int64_t ur, uc, vr, vc, mult, ax, ay, zx, zy
    cdef PairSet s

    prepared = []
    for alphas, betas, ur, uc, vr, vc, mult in tasks:
        al = np.ascontiguousarray(alphas, dtype=np.int64)
        be = np.ascontiguousarray(betas, dtype=np.int64)
        prepared.append((al, be, ur, uc, vr, vc, mult))
        total += al.shape[0] * be.shape[0]

    outx = np.empty(total, dtype=np.int64)
    outy = np.empty(total, dtype=np.int64)
    cdef cnp.int64_t[::1] ox = outx
    cdef cnp.int64_t[::1] oy = outy

    if _pairset_init(&s, n + total) != 0:
        _pairset_free(&s)
        raise MemoryError("closure kernel hash table")
    try:
        with nogil:
            for i in range(n):
                _pairset_add(&s, scale * x[i], scale * y[i])
        for al, be, ur, uc, vr, vc, mult in prepared:
            na = al.shape[0]
            nb = be.shape[0]
            with nogil:
                for j in range(na):
                    ax = al[j] * vr
                    ay = al[j] * vc
                    for k in range(nb):
                        zx = mult * (ax - be[k] * ur)
                        zy = mult * (ay - be[k] * uc)
                        if _pairset_add(&s, zx, zy):
                            ox[count] = zx
                            oy[count] = zy
                            count += 1
    finally:
        _pairset_free(&s)

    outx = outx[:count]
    outy = outy[:count]
    order = np.lexsort((outy, outx))
    return outx[order].tolist(), outy[order].tolist()


def as_native(values):
    return np.ascontiguousarray(values, dtype=np.int64)


def merge_unique(parts):
    if not parts:
        return [], []
    xs = np.concatenate([np.asarray(p[0], dtype=np.int64) for p in parts])
    ys = np.concatenate([np.asarray(p[1], dtype=np.int64) for p in parts])
    order = np.lexsort((ys, xs))
    xs, ys = xs[order], ys[order]
    keep = np.ones(xs.shape[0], dtype=bool)
    keep[1:] = (xs[1:] != xs[:-1]) | (ys[1:] != ys[:-1])
    return xs[keep].tolist(), ys[keep].tolist()
