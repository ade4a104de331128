# cython: boundscheck=False, wraparound=False
# note: cdivision stays off -- the cyclic index wrap relies on floored %
"""Compiled kernels.  Semantics documented in ``reference.py``."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin, fabs, pow, M_PI

cnp.import_array()

__all__ = ["trig_eval", "periodic_deriv", "transitions"]


def trig_eval(cos_amps, sin_amps, x, int deriv=0):
    cdef cnp.ndarray[double, ndim=1] a = np.ascontiguousarray(cos_amps, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] b = np.ascontiguousarray(sin_amps, dtype=np.float64)
    if a.shape[0] != b.shape[0]:
        raise ValueError("coefficient arrays must be 1-d and equally long")
    if deriv < 0:
        raise ValueError("deriv must be non-negative")
    cdef cnp.ndarray[double, ndim=1] xs = np.ascontiguousarray(
        np.atleast_1d(x), dtype=np.float64
    )
    cdef Py_ssize_t m = xs.shape[0]
    cdef Py_ssize_t h = a.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] scale = np.empty(h, dtype=np.float64)
    cdef double shift = deriv * 0.5 * M_PI
    cdef Py_ssize_t i, n
    cdef double acc, arg
    for n in range(h):
        scale[n] = pow(<double> n, <double> deriv) if deriv else 1.0
    for i in range(m):
        acc = 0.0
        for n in range(h):
            arg = n * xs[i] + shift
            acc += scale[n] * (a[n] * cos(arg) + b[n] * sin(arg))
        out[i] = acc
    return out


def periodic_deriv(values, int order, double spacing):
    cdef cnp.ndarray[double, ndim=1] v = np.ascontiguousarray(values, dtype=np.float64)
    if spacing <= 0.0:
        raise ValueError("spacing must be positive")
    cdef Py_ssize_t n = v.shape[0]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i
    cdef Py_ssize_t m3, m2, m1, p1, p2, p3
    cdef double inv
    if order == 1:
        inv = 1.0 / (12.0 * spacing)
        for i in range(n):
            m2 = (i - 2) % n; m1 = (i - 1) % n
            p1 = (i + 1) % n; p2 = (i + 2) % n
            out[i] = (v[m2] - 8.0 * v[m1] + 8.0 * v[p1] - v[p2]) * inv
    elif order == 2:
        inv = 1.0 / (12.0 * spacing * spacing)
        for i in range(n):
            m2 = (i - 2) % n; m1 = (i - 1) % n
            p1 = (i + 1) % n; p2 = (i + 2) % n
            out[i] = (-v[m2] + 16.0 * v[m1] - 30.0 * v[i] + 16.0 * v[p1] - v[p2]) * inv
    elif order == 3:
        inv = 1.0 / (spacing * spacing * spacing)
        for i in range(n):
            m3 = (i - 3) % n; m2 = (i - 2) % n; m1 = (i - 1) % n
            p1 = (i + 1) % n; p2 = (i + 2) % n; p3 = (i + 3) % n
            out[i] = (
                0.125 * v[m3] - v[m2] + 1.625 * v[m1]
                - 1.625 * v[p1] + v[p2] - 0.125 * v[p3]
            ) * inv
    else:
        raise ValueError("order must be 1, 2 or 3")
    return out


def transitions(values, double tol):
    cdef cnp.ndarray[double, ndim=1] v = np.ascontiguousarray(values, dtype=np.float64)
    if tol < 0.0:
        raise ValueError("tol must be non-negative")
    cdef Py_ssize_t n = v.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] nz = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t m = 0
    cdef Py_ssize_t i
    for i in range(n):
        if fabs(v[i]) > tol:
            nz[m] = i
            m += 1
    empty = np.empty((0, 2), dtype=np.int64)
    if m == 0:
        return empty, empty
    if m == 1:
        if n > 1:
            touch = np.empty((1, 2), dtype=np.int64)
            touch[0, 0] = (nz[0] + 1) % n
            touch[0, 1] = (nz[0] - 1) % n
            return empty, touch
        return empty, empty

    cdef cnp.ndarray[cnp.int64_t, ndim=2] pairs = np.empty((m, 2), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2] touches = np.empty((m, 2), dtype=np.int64)
    cdef Py_ssize_t np_ = 0, nt = 0
    cdef Py_ssize_t cur, nxt, gap
    cdef int scur, snxt
    for i in range(m):
        cur = nz[i]
        nxt = nz[(i + 1) % m]
        gap = (nxt - cur) % n
        scur = 1 if v[cur] > 0.0 else -1
        snxt = 1 if v[nxt] > 0.0 else -1
        if scur != snxt:
            pairs[np_, 0] = cur
            pairs[np_, 1] = nxt
            np_ += 1
        elif gap > 1:
            touches[nt, 0] = (cur + 1) % n
            touches[nt, 1] = (nxt - 1) % n
            nt += 1
    return pairs[:np_].copy(), touches[:nt].copy()
