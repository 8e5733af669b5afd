# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p elimination kernels (entries must stay below 2**31)."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


cdef i64 _inv(i64 x, i64 p) nogil:
    cdef i64 result = 1, base = x % p, e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


cdef int _eliminate(i64[:, ::1] m, i64 p, bint full, int* pivcols) nogil:
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, col, k, j, piv
    cdef i64 f, inv, tmp
    for col in range(ncols):
        if r == nrows:
            break
        piv = -1
        for k in range(r, nrows):
            if m[k, col] != 0:
                piv = k
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                tmp = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = tmp
        inv = _inv(m[r, col], p)
        if full:
            for j in range(col, ncols):
                m[r, j] = (m[r, j] * inv) % p
            for k in range(nrows):
                if k != r:
                    f = m[k, col]
                    if f != 0:
                        for j in range(col, ncols):
                            m[k, j] = (m[k, j] - f * m[r, j]) % p
                            if m[k, j] < 0:
                                m[k, j] += p
        else:
            for k in range(r + 1, nrows):
                f = m[k, col]
                if f != 0:
                    f = (f * inv) % p
                    for j in range(col, ncols):
                        m[k, j] = (m[k, j] - f * m[r, j]) % p
                        if m[k, j] < 0:
                            m[k, j] += p
        if pivcols != NULL:
            pivcols[r] = <int>col
        r += 1
    return <int>r


def rank_mod_p(a, i64 p):
    cdef i64[:, ::1] m = np.mod(np.array(a, dtype=np.int64, copy=True, order="C"), p)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    cdef int r
    with nogil:
        r = _eliminate(m, p, False, NULL)
    return r


def rref_mod_p(a, i64 p):
    arr = np.mod(np.array(a, dtype=np.int64, copy=True, order="C"), p)
    cdef i64[:, ::1] m = arr
    if m.shape[0] == 0 or m.shape[1] == 0:
        return arr, ()
    piv_arr = np.zeros(min(m.shape[0], m.shape[1]), dtype=np.intc)
    cdef int[::1] piv = piv_arr
    cdef int r
    with nogil:
        r = _eliminate(m, p, True, &piv[0])
    return arr, tuple(int(x) for x in piv_arr[:r])
