# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Durbin–Levinson kernels.

Same signatures and return conventions as ``hyperdecay._dlpy``; the failing
order ``k`` (or -1) is returned instead of raising so the wrappers own the
error types.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt

cnp.import_array()

cdef enum:
    LEVINSON = 0
    FILTER = 1
    SIMULATE = 2


cdef inline double _dot_rev(const double* a, const double* b, Py_ssize_t m) noexcept nogil:
    """Σ_{j<m} a[j]·b[−j] over a reversed-stride second operand."""
    cdef double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0
    cdef Py_ssize_t j = 0
    while j + 4 <= m:
        s0 += a[j] * b[-j]
        s1 += a[j + 1] * b[-j - 1]
        s2 += a[j + 2] * b[-j - 2]
        s3 += a[j + 3] * b[-j - 3]
        j += 4
    while j < m:
        s0 += a[j] * b[-j]
        j += 1
    return (s0 + s1) + (s2 + s3)


cdef Py_ssize_t _run(const double[::1] gamma, Py_ssize_t n, double margin, int mode,
                     const double[::1] x, double[::1] out, double[::1] pacf,
                     double[::1] sigma2, double[::1] phi) noexcept nogil:
    cdef Py_ssize_t t, j, h, a, b
    cdef double v = gamma[0], acc, kappa, pa, pb, pred
    if not v > 0.0:
        return 0
    for t in range(n):
        if t > 0:
            h = t - 1
            acc = gamma[t] - _dot_rev(&phi[0], &gamma[t - 1], h)
            kappa = acc / v
            if not fabs(kappa) < 1.0 - margin:
                return t
            for j in range(h // 2):
                a = j
                b = h - 1 - j
                pa = phi[a]
                pb = phi[b]
                phi[a] = pa - kappa * pb
                phi[b] = pb - kappa * pa
            if h % 2 == 1:
                a = h // 2
                phi[a] = phi[a] * (1.0 - kappa)
            phi[h] = kappa
            pacf[h] = kappa
            v = v * (1.0 - kappa * kappa)
        sigma2[t] = v
        if mode == LEVINSON:
            continue
        if mode == FILTER:
            pred = _dot_rev(&phi[0], &x[t - 1], t) if t else 0.0
            out[t] = x[t] - pred
        else:
            pred = _dot_rev(&phi[0], &out[t - 1], t) if t else 0.0
            out[t] = pred + sqrt(v) * x[t]
    return -1


def levinson(gamma, Py_ssize_t n, double margin):
    cdef const double[::1] g = np.ascontiguousarray(gamma, dtype=np.float64)
    pacf = np.zeros(max(n - 1, 0))
    sigma2 = np.zeros(n)
    phi = np.zeros(max(n, 1))
    cdef double[::1] pv = pacf, sv = sigma2, fv = phi
    cdef double[::1] dummy = np.zeros(1)
    cdef Py_ssize_t fail
    with nogil:
        fail = _run(g, n, margin, LEVINSON, dummy, dummy, pv, sv, fv)
    return pacf, sigma2, phi[: max(n - 1, 0)].copy(), fail


def innovations(gamma, x, double margin):
    cdef const double[::1] g = np.ascontiguousarray(gamma, dtype=np.float64)
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0]
    pacf = np.zeros(max(n - 1, 0))
    sigma2 = np.zeros(n)
    phi = np.zeros(max(n, 1))
    e = np.zeros(n)
    cdef double[::1] pv = pacf, sv = sigma2, fv = phi, ev = e
    cdef Py_ssize_t fail
    with nogil:
        fail = _run(g, n, margin, FILTER, xv, ev, pv, sv, fv)
    return e, sigma2, fail


def simulate(gamma, w, double margin):
    cdef const double[::1] g = np.ascontiguousarray(gamma, dtype=np.float64)
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = wv.shape[0]
    pacf = np.zeros(max(n - 1, 0))
    sigma2 = np.zeros(n)
    phi = np.zeros(max(n, 1))
    z = np.zeros(n)
    cdef double[::1] pv = pacf, sv = sigma2, fv = phi, zv = z
    cdef Py_ssize_t fail
    with nogil:
        fail = _run(g, n, margin, SIMULATE, wv, zv, pv, sv, fv)
    return z, fail
