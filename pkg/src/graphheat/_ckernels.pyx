# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np

from libc.math cimport fabs, sqrt, hypot
from libc.stdint cimport int64_t

cdef double EPS = 2.0 ** -52


def tred2(a):
    cdef double[:, ::1] V = np.array(a, dtype=np.float64, copy=True, order="C")
    cdef Py_ssize_t n = V.shape[0]
    cdef double[::1] d = np.array(V[n - 1, :], dtype=np.float64)
    cdef double[::1] e = np.zeros(n)
    cdef Py_ssize_t i, j, k
    cdef double scale, h, f, g, hh

    for i in range(n - 1, 0, -1):
        scale = 0.0
        h = 0.0
        for k in range(i):
            scale += fabs(d[k])
        if scale == 0.0:
            e[i] = d[i - 1]
            for j in range(i):
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
                V[j, i] = 0.0
        else:
            for k in range(i):
                d[k] /= scale
                h += d[k] * d[k]
            f = d[i - 1]
            g = sqrt(h)
            if f > 0:
                g = -g
            e[i] = scale * g
            h = h - f * g
            d[i - 1] = f - g
            for j in range(i):
                e[j] = 0.0
            for j in range(i):
                f = d[j]
                V[j, i] = f
                g = e[j] + V[j, j] * f
                for k in range(j + 1, i):
                    g += V[k, j] * d[k]
                    e[k] += V[k, j] * f
                e[j] = g
            f = 0.0
            for j in range(i):
                e[j] /= h
                f += e[j] * d[j]
            hh = f / (h + h)
            for j in range(i):
                e[j] -= hh * d[j]
            for j in range(i):
                f = d[j]
                g = e[j]
                for k in range(j, i):
                    V[k, j] -= (f * e[k] + g * d[k])
                d[j] = V[i - 1, j]
                V[i, j] = 0.0
        d[i] = h

    for i in range(n - 1):
        V[n - 1, i] = V[i, i]
        V[i, i] = 1.0
        h = d[i + 1]
        if h != 0.0:
            for k in range(i + 1):
                d[k] = V[k, i + 1] / h
            for j in range(i + 1):
                g = 0.0
                for k in range(i + 1):
                    g += V[k, i + 1] * V[k, j]
                for k in range(i + 1):
                    V[k, j] -= g * d[k]
        for k in range(i + 1):
            V[k, i + 1] = 0.0
    for j in range(n):
        d[j] = V[n - 1, j]
        V[n - 1, j] = 0.0
    V[n - 1, n - 1] = 1.0
    e[0] = 0.0
    return np.asarray(d), np.asarray(e), np.asarray(V)


def tql2(double[::1] d, double[::1] e, double[:, ::1] V, int max_sweeps):
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, k, l, m
    cdef int sweeps
    cdef double f = 0.0, tst1 = 0.0
    cdef double g, p, r, dl1, h, c, c2, c3, el1, s, s2, t

    for i in range(1, n):
        e[i - 1] = e[i]
    e[n - 1] = 0.0

    for l in range(n):
        t = fabs(d[l]) + fabs(e[l])
        if t > tst1:
            tst1 = t
        m = l
        while m < n:
            if fabs(e[m]) <= EPS * tst1:
                break
            m += 1
        if m > l:
            sweeps = 0
            while True:
                sweeps += 1
                if sweeps > max_sweeps:
                    return l + 1
                g = d[l]
                p = (d[l + 1] - g) / (2.0 * e[l])
                r = hypot(p, 1.0)
                if p < 0:
                    r = -r
                d[l] = e[l] / (p + r)
                d[l + 1] = e[l] * (p + r)
                dl1 = d[l + 1]
                h = g - d[l]
                for i in range(l + 2, n):
                    d[i] -= h
                f += h

                p = d[m]
                c = 1.0
                c2 = c
                c3 = c
                el1 = e[l + 1]
                s = 0.0
                s2 = 0.0
                i = m - 1
                while i >= l:
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * e[i]
                    h = c * p
                    r = hypot(p, e[i])
                    e[i + 1] = s * r
                    s = e[i] / r
                    c = p / r
                    p = c * d[i] - s * g
                    d[i + 1] = h + s * (c * g + s * d[i])
                    for k in range(n):
                        h = V[k, i + 1]
                        V[k, i + 1] = s * V[k, i] + c * h
                        V[k, i] = c * V[k, i] - s * h
                    i -= 1
                p = -s * s2 * c3 * el1 * e[l] / dl1
                e[l] = s * p
                d[l] = c * p
                if fabs(e[l]) <= EPS * tst1:
                    break
        d[l] = d[l] + f
        e[l] = 0.0
    return 0


def laplacian_matvec(const int64_t[::1] indptr, const int64_t[::1] indices,
                     const int64_t[::1] degree, const double[::1] x):
    cdef Py_ssize_t n = degree.shape[0]
    out = np.empty(n)
    cdef double[::1] y = out
    cdef Py_ssize_t i, p
    cdef double acc
    for i in range(n):
        acc = degree[i] * x[i]
        for p in range(indptr[i], indptr[i + 1]):
            acc -= x[indices[p]]
        y[i] = acc
    return out


def euler_evolve(const int64_t[::1] indptr, const int64_t[::1] indices,
                 const int64_t[::1] degree, u0, double dt, int64_t steps, double dt_last):
    cdef Py_ssize_t n = degree.shape[0]
    cur_arr = np.array(u0, dtype=np.float64, copy=True)
    nxt_arr = np.empty(n)
    cdef double[::1] cur = cur_arr
    cdef double[::1] nxt = nxt_arr
    cdef double[::1] tmp
    cdef Py_ssize_t i, p
    cdef int64_t k
    cdef double h, lu
    for k in range(steps):
        h = dt_last if k == steps - 1 else dt
        for i in range(n):
            lu = degree[i] * cur[i]
            for p in range(indptr[i], indptr[i + 1]):
                lu -= cur[indices[p]]
            nxt[i] = cur[i] - h * lu
        tmp = cur
        cur = nxt
        nxt = tmp
    return np.asarray(cur).copy()
