# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch density kernels; same contract as _pykernels."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, exp, log, lgamma, fabs, M_PI

cnp.import_array()

cdef double _BIG = 1e150


cdef double _gue_point(int N, double x, const double* c1, const double* c2) nogil:
    cdef double logscale = -0.25 * log(M_PI) - 0.5 * x * x
    cdef double p_prev = 0.0, p = 1.0, total = 1.0, nxt
    cdef int k
    for k in range(N - 1):
        nxt = c1[k] * x * p - c2[k] * p_prev
        p_prev = p
        p = nxt
        total += p * p
        if fabs(p) > _BIG:
            p /= _BIG
            p_prev /= _BIG
            total /= _BIG * _BIG
            logscale += log(_BIG)
    return total * exp(2 * logscale)


cdef double _lue_point(int N, double a, double x, const double* c1, const double* c2) nogil:
    if x <= 0:
        return 0.0
    cdef double logscale = 0.5 * (a * log(x) - x - lgamma(a + 1))
    cdef double p_prev = 0.0, p = 1.0, total = 1.0, nxt
    cdef int k
    for k in range(N - 1):
        nxt = ((2 * k + a + 1 - x) * p - c1[k] * p_prev) * c2[k]
        p_prev = p
        p = nxt
        total += p * p
        if fabs(p) > _BIG:
            p /= _BIG
            p_prev /= _BIG
            total /= _BIG * _BIG
            logscale += log(_BIG)
    return total * exp(2 * logscale)


def gue_density(int N, xs):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(x)
    k = np.arange(max(N, 1), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c1 = np.sqrt(2.0 / (k + 1))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c2 = np.sqrt(k / (k + 1))
    cdef Py_ssize_t i
    with nogil:
        for i in range(x.shape[0]):
            out[i] = _gue_point(N, x[i], &c1[0], &c2[0])
    return out.reshape(np.shape(xs))


def lue_density(int N, double a, xs):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] x = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(x)
    k = np.arange(max(N, 1), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c1 = np.sqrt(k * (k + a))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c2 = 1.0 / np.sqrt((k + 1) * (k + a + 1))
    cdef Py_ssize_t i
    with nogil:
        for i in range(x.shape[0]):
            out[i] = _lue_point(N, a, x[i], &c1[0], &c2[0])
    return out.reshape(np.shape(xs))
