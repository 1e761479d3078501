# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polygamma kernels; mirrors ``_polygamma_py`` operation by operation."""

import numpy as np

from libc.math cimport log, pow, fabs


cdef inline void _two_sum(double a, double b, double *s, double *e) noexcept nogil:
    cdef double ss = a + b
    cdef double bb = ss - a
    s[0] = ss
    e[0] = (a - (ss - bb)) + (b - bb)


def digamma_kernel(double x, double shift, const double[::1] coef, int nterms, double rel_tol):
    cdef double s = 0.0, c = 0.0, e, z = x, w, wp = 1.0, tail = 0.0, t, cut
    cdef long n = 0
    cdef int j
    while z < shift:
        _two_sum(s, 1.0 / z, &s, &e)
        c += e
        n += 1
        z = x + n
    w = 1.0 / (z * z)
    cut = 1e-3 * rel_tol
    for j in range(nterms):
        wp *= w
        t = coef[j] * wp
        tail += t
        if fabs(t) <= cut * fabs(tail):
            break
    return (log(z) - 0.5 / z - tail) - (s + c)


cdef double _abs_kernel(int k, double x, double shift, double fact, double lead0,
                        double lead1, const double[::1] coef, int nterms,
                        double rel_tol) noexcept nogil:
    cdef double s = 0.0, c = 0.0, e, z = x, iz, w, wp = 1.0, series = 0.0
    cdef double head, cut, t, tail
    cdef long n = 0
    cdef int j
    while z < shift:
        _two_sum(s, fact / pow(z, k) / z, &s, &e)
        c += e
        n += 1
        z = x + n
    iz = 1.0 / z
    w = iz * iz
    head = lead0 + lead1 * iz
    cut = 1e-3 * rel_tol * head
    for j in range(nterms):
        wp *= w
        t = coef[j] * wp
        series += t
        if fabs(t) <= cut:
            break
    tail = (head + series) / pow(z, k)
    _two_sum(s, tail, &s, &e)
    return s + (c + e)


def polygamma_abs_kernel(int k, double x, double shift, double fact, double lead0,
                         double lead1, const double[::1] coef, int nterms, double rel_tol):
    return _abs_kernel(k, x, shift, fact, lead0, lead1, coef, nterms, rel_tol)


def polygamma_abs_array(int k, xs, double shift, double fact, double lead0, double lead1,
                        const double[::1] coef, int nterms, double rel_tol):
    arr = np.ascontiguousarray(xs, dtype=np.float64)
    out = np.empty_like(arr)
    cdef const double[::1] xin = arr.reshape(-1)
    cdef double[::1] xout = out.reshape(-1)
    cdef Py_ssize_t i, m = xin.shape[0]
    with nogil:
        for i in range(m):
            xout[i] = _abs_kernel(k, xin[i], shift, fact, lead0, lead1, coef, nterms, rel_tol)
    return out
