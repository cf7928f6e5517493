# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled embedding kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline bint _contains(const int[:] row, Py_ssize_t k, int y) noexcept nogil:
    cdef Py_ssize_t q
    for q in range(k):
        if row[q] == y:
            return True
    return False


def extensions(const int[:, :] embs, rm, const cnp.int64_t[:] out_ptr, const int[:] out_idx,
               const int[:] out_dly, const cnp.int64_t[:] in_ptr, const int[:] in_idx,
               const int[:] in_dly):
    cdef Py_ssize_t n = embs.shape[0], k = embs.shape[1]
    cdef int[:] rmv = np.ascontiguousarray(rm, dtype=np.int32)
    cdef Py_ssize_t nrm = rmv.shape[0]
    cdef Py_ssize_t r, a, e, cnt = 0, w
    cdef int i, x, y
    # first pass sizes the output
    for r in range(n):
        for a in range(nrm):
            x = embs[r, rmv[a]]
            for e in range(out_ptr[x], out_ptr[x + 1]):
                if not _contains(embs[r], k, out_idx[e]):
                    cnt += 1
            for e in range(in_ptr[x], in_ptr[x + 1]):
                if not _contains(embs[r], k, in_idx[e]):
                    cnt += 1
    rows_a = np.empty(cnt, dtype=np.int64)
    pos_a = np.empty(cnt, dtype=np.int32)
    dirs_a = np.empty(cnt, dtype=np.int32)
    dly_a = np.empty(cnt, dtype=np.int32)
    nbr_a = np.empty(cnt, dtype=np.int32)
    cdef cnp.int64_t[:] rows = rows_a
    cdef int[:] pos = pos_a, dirs = dirs_a, dly = dly_a, nbr = nbr_a
    w = 0
    for r in range(n):
        for a in range(nrm):
            i = rmv[a]
            x = embs[r, i]
            for e in range(out_ptr[x], out_ptr[x + 1]):
                y = out_idx[e]
                if not _contains(embs[r], k, y):
                    rows[w] = r; pos[w] = i; dirs[w] = 0; dly[w] = out_dly[e]; nbr[w] = y
                    w += 1
            for e in range(in_ptr[x], in_ptr[x + 1]):
                y = in_idx[e]
                if not _contains(embs[r], k, y):
                    rows[w] = r; pos[w] = i; dirs[w] = 1; dly[w] = in_dly[e]; nbr[w] = y
                    w += 1
    return rows_a, pos_a, dirs_a, dly_a, nbr_a


cdef inline Py_ssize_t _find(const int[:] idx, Py_ssize_t lo, Py_ssize_t hi, int y) noexcept nogil:
    # neighbour lists are sorted ascending
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if idx[mid] < y:
            lo = mid + 1
        else:
            hi = mid
    return lo


def induced(const int[:, :] embs, const cnp.int64_t[:] ptr, const int[:] idx, const int[:] dly):
    cdef Py_ssize_t n = embs.shape[0], k = embs.shape[1]
    out_a = np.zeros((n, k * k), dtype=np.int32)
    cdef int[:, :] out = out_a
    cdef Py_ssize_t r, p, q
    cdef Py_ssize_t e, hi
    cdef int x, y
    with nogil:
        for r in range(n):
            for p in range(k):
                x = embs[r, p]
                hi = ptr[x + 1]
                for q in range(k):
                    if q == p:
                        continue
                    y = embs[r, q]
                    e = _find(idx, ptr[x], hi, y)
                    if e < hi and idx[e] == y:
                        out[r, p * k + q] = dly[e] + 1
    return out_a
