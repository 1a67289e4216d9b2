# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled transitive-reflexive closure for carriers of up to 64 points.

Larger carriers (rare at desk scale) are delegated to the pure-Python kernel,
whose arbitrary-width ints have no row-size limit.
"""

from finstream._kernels._closure_py import closure_rows as _py_closure_rows


def closure_rows(rows, Py_ssize_t n):
    if n > 64:
        return _py_closure_rows(rows, n)
    cdef unsigned long long buf[64]
    cdef Py_ssize_t i, k
    cdef unsigned long long rk, bit
    for i in range(n):
        buf[i] = rows[i]
        buf[i] |= 1ULL << i
    for k in range(n):
        rk = buf[k]
        bit = 1ULL << k
        for i in range(n):
            if buf[i] & bit:
                buf[i] |= rk
    return tuple([buf[i] for i in range(n)])


BACKEND = "compiled"
