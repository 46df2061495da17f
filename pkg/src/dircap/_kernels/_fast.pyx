# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled pair-sum kernels (see _slow.py for the reference semantics).

Per-offset partial sums are accumulated in C and combined with np.sum so
both backends share the same outer reduction order.
"""

import numpy as np

from libc.math cimport log, pow, sin

BACKEND = "compiled"

cdef double M_PI = 3.141592653589793238462643383279502884


cdef void _weights(double[::1] w, Py_ssize_t M) noexcept:
    cdef Py_ssize_t m
    cdef double s
    for m in range(1, M):
        s = 2.0 * sin(M_PI * m / M)
        w[m - 1] = 1.0 / (s * s)


def douglas_offdiag(z):
    z = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const double complex[::1] zv = z
    cdef Py_ssize_t M = zv.shape[0]
    cdef Py_ssize_t half = M // 2
    w_arr = np.empty(M - 1, dtype=np.float64)
    cdef double[::1] w = w_arr
    _weights(w, M)
    partial_arr = np.empty(half, dtype=np.float64)
    cdef double[::1] partial = partial_arr
    cdef Py_ssize_t m, j
    cdef double s, dre, dim
    cdef double complex d
    for m in range(1, half + 1):
        s = 0.0
        for j in range(0, M - m):
            d = zv[j] - zv[j + m]
            dre = d.real; dim = d.imag
            s += dre * dre + dim * dim
        for j in range(M - m, M):
            d = zv[j] - zv[j + m - M]
            dre = d.real; dim = d.imag
            s += dre * dre + dim * dim
        partial[m - 1] = s
    total = 2.0 * np.sum(partial_arr * w_arr[:half])
    if M % 2 == 0:
        total -= partial_arr[half - 1] * w_arr[half - 1]
    return float(total)


def local_row(z, j):
    z = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const double complex[::1] zv = z
    cdef Py_ssize_t M = zv.shape[0]
    cdef Py_ssize_t jj = j
    w_arr = np.empty(M - 1, dtype=np.float64)
    cdef double[::1] w = w_arr
    _weights(w, M)
    cdef Py_ssize_t k, off
    cdef double s = 0.0
    cdef double dre, dim
    cdef double complex d
    for k in range(M):
        if k == jj:
            continue
        off = k - jj
        if off < 0:
            off += M
        d = zv[jj] - zv[k]
        dre = d.real; dim = d.imag
        s += (dre * dre + dim * dim) * w[off - 1]
    return float(s)


def local_rows(z):
    z = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const double complex[::1] zv = z
    cdef Py_ssize_t M = zv.shape[0]
    w_arr = np.empty(M - 1, dtype=np.float64)
    cdef double[::1] w = w_arr
    _weights(w, M)
    out_arr = np.zeros(M, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t m, j
    cdef double wm, dre, dim
    cdef double complex d
    for m in range(1, M):
        wm = w[m - 1]
        for j in range(0, m):
            d = zv[j] - zv[j - m + M]
            dre = d.real; dim = d.imag
            out[j] += wm * (dre * dre + dim * dim)
        for j in range(m, M):
            d = zv[j] - zv[j - m]
            dre = d.real; dim = d.imag
            out[j] += wm * (dre * dre + dim * dim)
    return out_arr


def lemma6_offdiag(z, eta):
    z = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const double complex[::1] zv = z
    cdef Py_ssize_t M = zv.shape[0]
    cdef Py_ssize_t half = M // 2
    cdef double q = 1.0 - eta
    w_arr = np.empty(M - 1, dtype=np.float64)
    cdef double[::1] w = w_arr
    _weights(w, M)
    partial_arr = np.empty(half, dtype=np.float64)
    cdef double[::1] partial = partial_arr
    cdef Py_ssize_t m, j
    cdef double s, dre, dim
    cdef double complex d
    for m in range(1, half + 1):
        s = 0.0
        for j in range(0, M - m):
            d = zv[j] - zv[j + m]
            dre = d.real; dim = d.imag
            s += pow(dre * dre + dim * dim, q)
        for j in range(M - m, M):
            d = zv[j] - zv[j + m - M]
            dre = d.real; dim = d.imag
            s += pow(dre * dre + dim * dim, q)
        partial[m - 1] = s
    total = 2.0 * np.sum(partial_arr * w_arr[:half])
    if M % 2 == 0:
        total -= partial_arr[half - 1] * w_arr[half - 1]
    return float(total)


def crs_row(x, j):
    x = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] xv = x
    cdef Py_ssize_t M = xv.shape[0]
    cdef Py_ssize_t jj = j
    w_arr = np.empty(M - 1, dtype=np.float64)
    cdef double[::1] w = w_arr
    _weights(w, M)
    cdef Py_ssize_t k, off
    cdef double s = 0.0
    cdef double xj2 = xv[jj] * xv[jj]
    cdef double lxj = log(xv[jj])
    cdef double xk2
    for k in range(M):
        if k == jj:
            continue
        off = k - jj
        if off < 0:
            off += M
        xk2 = xv[k] * xv[k]
        s += (xj2 - xk2 - 2.0 * xk2 * (lxj - log(xv[k]))) * w[off - 1]
    return float(s)


def gamma_split(cmp, asq, u, bsq, p):
    cmp_c = np.ascontiguousarray(cmp, dtype=np.float64)
    asq_c = np.ascontiguousarray(asq, dtype=np.float64)
    u_c = np.ascontiguousarray(u, dtype=np.complex128)
    bsq_c = np.ascontiguousarray(bsq, dtype=np.float64)
    p_c = np.ascontiguousarray(p, dtype=np.complex128)
    cdef const double[::1] cv = cmp_c
    cdef const double[::1] av = asq_c
    cdef const double complex[::1] uv = u_c
    cdef const double[::1] bv = bsq_c
    cdef const double complex[::1] pv = p_c
    cdef Py_ssize_t M = cv.shape[0]
    w_arr = np.empty(M - 1, dtype=np.float64)
    cdef double[::1] w = w_arr
    _weights(w, M)
    pa_arr = np.empty(M - 1, dtype=np.float64)
    pb_arr = np.empty(M - 1, dtype=np.float64)
    cdef double[::1] pa = pa_arr
    cdef double[::1] pb = pb_arr
    cdef Py_ssize_t m, j, k
    cdef double sa, sb, dre, dim
    cdef double complex d
    for m in range(1, M):
        sa = 0.0
        sb = 0.0
        for j in range(M):
            k = j - m
            if k < 0:
                k += M
            if cv[k] <= cv[j]:
                d = uv[j] - uv[k]
                dre = d.real; dim = d.imag
                sa += (dre * dre + dim * dim) * av[j]
                d = pv[j] - pv[k]
                dre = d.real; dim = d.imag
                sb += (dre * dre + dim * dim) * bv[k]
        pa[m - 1] = sa
        pb[m - 1] = sb
    return float(np.sum(pa_arr * w_arr)), float(np.sum(pb_arr * w_arr))
