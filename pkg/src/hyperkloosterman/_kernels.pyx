# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled enumeration kernels; same signatures as ``_kernels_py``.

``spectral_grid`` is not here: the numpy FFT version is already optimal.
"""

import numpy as np

from libc.math cimport fabs

ctypedef long long i64

cdef enum:
    MAX_DEPTH = 64


cdef inline void _neumaier(double* total, double* comp, double x) noexcept nogil:
    cdef double t = total[0] + x
    if fabs(total[0]) >= fabs(x):
        comp[0] += (total[0] - t) + x
    else:
        comp[0] += (x - t) + total[0]
    total[0] = t


def _check_depth(int s):
    if s < 0 or s > MAX_DEPTH:
        raise ValueError(f"tuple length {s} outside [0, {MAX_DEPTH}]")


def pq_histogram(int p, int s, int lo):
    _check_depth(s)
    out = np.zeros((p, p), dtype=np.int64)
    cdef i64[:, ::1] h = out
    cdef i64 xs[MAX_DEPTH]
    cdef i64 P[MAX_DEPTH + 1]
    cdef i64 Q[MAX_DEPTH + 1]
    cdef int i
    cdef i64 x
    P[0] = 1
    Q[0] = 1
    if s == 0:
        h[1, 1] += 1
        return out
    for i in range(s):
        xs[i] = lo
    for i in range(s - 1):
        P[i + 1] = P[i] * xs[i] % p
        Q[i + 1] = Q[i] * (xs[i] - 1) % p
    with nogil:
        while True:
            # innermost coordinate runs in a tight loop
            for x in range(lo, p):
                h[P[s - 1] * x % p, Q[s - 1] * (x - 1) % p] += 1
            i = s - 2
            while i >= 0:
                xs[i] += 1
                if xs[i] < p:
                    break
                xs[i] = lo
                i -= 1
            if i < 0:
                break
            while i < s - 1:
                P[i + 1] = P[i] * xs[i] % p
                Q[i + 1] = Q[i] * (xs[i] - 1) % p
                i += 1
    return out


def unit_product_q_histogram(int p, int s, const i64[::1] inv):
    _check_depth(s)
    out = np.zeros(p, dtype=np.int64)
    cdef i64[::1] h = out
    cdef int d = s - 1
    cdef i64 xs[MAX_DEPTH]
    cdef i64 P[MAX_DEPTH + 1]
    cdef i64 Q[MAX_DEPTH + 1]
    cdef int i
    if d <= 0:
        # the empty prefix has product 1, so no admissible last coordinate
        return out
    P[0] = 1
    Q[0] = 1
    for i in range(d):
        xs[i] = 2
        P[i + 1] = P[i] * 2 % p
        Q[i + 1] = Q[i] % p
    with nogil:
        while True:
            if P[d] != 1:
                h[Q[d] * (inv[P[d]] - 1) % p] += 1
            i = d - 1
            while i >= 0:
                xs[i] += 1
                if xs[i] < p:
                    break
                xs[i] = 2
                i -= 1
            if i < 0:
                break
            while i < d:
                P[i + 1] = P[i] * xs[i] % p
                Q[i + 1] = Q[i] * (xs[i] - 1) % p
                i += 1
    return out


def k_naive_sum(int p, int s, i64 m, i64 k,
                const double complex[::1] addchar,
                const double complex[::1] roots,
                const i64[::1] dlog,
                const i64[::1] inv):
    _check_depth(s)
    cdef int n = p - 1
    cdef i64 xs[MAX_DEPTH]
    cdef i64 P[MAX_DEPTH + 1]
    cdef i64 S[MAX_DEPTH + 1]
    cdef int i
    cdef i64 x, pp, ss
    cdef double sr = 0.0, si = 0.0, cr = 0.0, ci = 0.0
    cdef double complex term
    m %= p
    k %= n
    P[0] = 1
    S[0] = 0
    if s == 0:
        term = roots[0] * addchar[m]
        return complex(term.real, term.imag)
    for i in range(s):
        xs[i] = 1
    for i in range(s - 1):
        P[i + 1] = P[i] * xs[i] % p
        S[i + 1] = (S[i] + xs[i]) % p
    with nogil:
        while True:
            for x in range(1, p):
                pp = P[s - 1] * x % p
                ss = (S[s - 1] + x) % p
                term = roots[k * dlog[pp] % n] * addchar[(ss + m * inv[pp]) % p]
                _neumaier(&sr, &cr, term.real)
                _neumaier(&si, &ci, term.imag)
            i = s - 2
            while i >= 0:
                xs[i] += 1
                if xs[i] < p:
                    break
                xs[i] = 1
                i -= 1
            if i < 0:
                break
            while i < s - 1:
                P[i + 1] = P[i] * xs[i] % p
                S[i + 1] = (S[i] + xs[i]) % p
                i += 1
    return complex(sr + cr, si + ci)


def gauss_direct(int p, const i64[::1] powg,
                 const double complex[::1] addchar,
                 const double complex[::1] roots):
    cdef int n = p - 1
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef int k, a
    cdef i64 idx
    cdef double sr, si, cr, ci
    cdef double complex term
    with nogil:
        for k in range(n):
            sr = 0.0
            si = 0.0
            cr = 0.0
            ci = 0.0
            idx = 0
            for a in range(n):
                term = roots[idx] * addchar[powg[a]]
                _neumaier(&sr, &cr, term.real)
                _neumaier(&si, &ci, term.imag)
                idx += k
                if idx >= n:
                    idx -= n
            o[k] = -((sr + cr) + 1j * (si + ci))
    return out
