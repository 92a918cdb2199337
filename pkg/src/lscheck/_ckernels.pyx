# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same signatures and results as ``_pykernels``."""
import numpy as np

from libc.math cimport INFINITY

BACKEND = "cython"


cdef inline void _interval(const double[:, ::1] slopes, const double[:, ::1] intercepts,
                           double lo, double hi, const double[::1] c, double eps,
                           double* a_out, double* b_out) noexcept nogil:
    cdef Py_ssize_t j, p
    cdef Py_ssize_t rows = slopes.shape[0]
    cdef Py_ssize_t pieces = slopes.shape[1]
    cdef double a = c[0] - eps
    cdef double b = c[0] + eps
    cdef double level, m, q, bound
    if lo > a:
        a = lo
    if hi < b:
        b = hi
    for j in range(rows):
        level = c[j + 1] - eps
        for p in range(pieces):
            m = slopes[j, p]
            q = intercepts[j, p]
            if m > 0.0:
                bound = (level - q) / m
                if bound > a:
                    a = bound
            elif m < 0.0:
                bound = (level - q) / m
                if bound < b:
                    b = bound
            elif q < level:
                a_out[0] = INFINITY
                b_out[0] = -INFINITY
                return
    a_out[0] = a
    b_out[0] = b


def cap_values(const double[:, ::1] slopes, const double[:, ::1] intercepts, double t1):
    cdef Py_ssize_t j, p
    cdef Py_ssize_t rows = slopes.shape[0]
    cdef Py_ssize_t pieces = slopes.shape[1]
    out = np.empty(rows)
    cdef double[::1] o = out
    cdef double v, best
    for j in range(rows):
        best = INFINITY
        for p in range(pieces):
            v = intercepts[j, p] + slopes[j, p] * t1
            if v < best:
                best = v
        o[j] = best
    return out


def feasible_interval(const double[:, ::1] slopes, const double[:, ::1] intercepts,
                      double lo, double hi, const double[::1] c, double eps):
    cdef double a, b
    _interval(slopes, intercepts, lo, hi, c, eps, &a, &b)
    return a, b


def bisect_distance(const double[:, ::1] slopes, const double[:, ::1] intercepts,
                    double lo, double hi, const double[::1] c, double eps_hi,
                    double abs_tol, double rel_tol, int max_iter):
    cdef double a, b, mid
    cdef double e_lo = 0.0
    cdef double e_hi = eps_hi
    cdef int it = 0
    with nogil:
        _interval(slopes, intercepts, lo, hi, c, 0.0, &a, &b)
        if a <= b:
            e_hi = 0.0
        else:
            while e_hi - e_lo > abs_tol + rel_tol * e_hi:
                if it == max_iter:
                    break
                mid = 0.5 * (e_lo + e_hi)
                _interval(slopes, intercepts, lo, hi, c, mid, &a, &b)
                if a <= b:
                    e_hi = mid
                else:
                    e_lo = mid
                it += 1
    return e_hi, it


def contains_rows(const double[:, ::1] slopes, const double[:, ::1] intercepts,
                  double lo, double hi, const double[:, ::1] V, double tol):
    cdef Py_ssize_t i, j, p
    cdef Py_ssize_t n = V.shape[0]
    cdef Py_ssize_t rows = slopes.shape[0]
    cdef Py_ssize_t pieces = slopes.shape[1]
    out = np.zeros(n, dtype=bool)
    cdef unsigned char[::1] o = out.view(np.uint8)
    cdef double t1, v, best
    cdef bint ok
    with nogil:
        for i in range(n):
            t1 = V[i, 0]
            ok = (t1 >= lo - tol) and (t1 <= hi + tol)
            j = 0
            while ok and j < rows:
                best = INFINITY
                for p in range(pieces):
                    v = intercepts[j, p] + slopes[j, p] * t1
                    if v < best:
                        best = v
                if V[i, j + 1] > best + tol:
                    ok = False
                j += 1
            o[i] = ok
    return out
