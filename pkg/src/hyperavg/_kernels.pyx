# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Contracts and operation order mirror ``_pykernels``."""

import numpy as np

from libc.math cimport fabs, sqrt
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy

BACKEND = "cython"

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15ULL
cdef uint64_t M1 = 0xBF58476D1CE4E5B9ULL
cdef uint64_t M2 = 0x94D049BB133111EBULL


cdef inline uint64_t mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * M1
    z = (z ^ (z >> 27)) * M2
    return z ^ (z >> 31)


def run_batch(verts, offsets, x0, double xbar, double sq0, double d10, seeds, Py_ssize_t steps):
    cdef int64_t[::1] V = np.ascontiguousarray(verts, dtype=np.int64)
    cdef int64_t[::1] O = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef double[::1] X0 = np.ascontiguousarray(x0, dtype=np.float64)
    cdef uint64_t[::1] S = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef Py_ssize_t n = X0.shape[0]
    cdef uint64_t m = O.shape[0] - 1
    cdef Py_ssize_t trials = S.shape[0]

    sq_arr = np.empty((trials, steps + 1))
    d1_arr = np.empty((trials, steps + 1))
    x_arr = np.empty(n)
    cdef double[:, ::1] SQ = sq_arr
    cdef double[:, ::1] D1 = d1_arr
    cdef double[::1] x = x_arr

    cdef Py_ssize_t tr, t, j, lo, hi
    cdef uint64_t state, z, c
    cdef double s, mean, k, dsq, acc, old, diff, cur_sq, cur_d1

    with nogil:
        for tr in range(trials):
            memcpy(&x[0], &X0[0], n * sizeof(double))
            state = S[tr]
            cur_sq = sq0
            cur_d1 = d10
            SQ[tr, 0] = cur_sq
            D1[tr, 0] = cur_d1
            for t in range(steps):
                state = state + GAMMA
                z = mix64(state)
                c = ((z >> 32) * m) >> 32
                lo = O[c]
                hi = O[c + 1]
                k = <double>(hi - lo)
                s = x[V[lo]]
                for j in range(lo + 1, hi):
                    s = s + x[V[j]]
                mean = s / k
                dsq = 0.0
                acc = 0.0
                for j in range(lo, hi):
                    old = x[V[j]]
                    diff = old - mean
                    dsq = dsq + diff * diff
                    acc = acc + fabs(old - xbar)
                    x[V[j]] = mean
                cur_sq = cur_sq - dsq
                if cur_sq < 0.0:
                    cur_sq = 0.0
                cur_d1 = cur_d1 + (k * fabs(mean - xbar) - acc)
                if cur_d1 < 0.0:
                    cur_d1 = 0.0
                SQ[tr, t + 1] = cur_sq
                D1[tr, t + 1] = cur_d1
    return sq_arr, d1_arr


cdef inline void neumaier(double* total, double* comp, double value) noexcept nogil:
    cdef double t = total[0] + value
    if fabs(total[0]) >= fabs(value):
        comp[0] += (total[0] - t) + value
    else:
        comp[0] += (value - t) + total[0]
    total[0] = t


cdef void visit(const int64_t* V, const int64_t* O, Py_ssize_t m, Py_ssize_t n,
                double xbar, double* states, Py_ssize_t depth, Py_ssize_t t_max,
                double* totals, double* comps) noexcept nogil:
    cdef double* y = states + depth * n
    cdef double* child
    cdef double v = 0.0, d, s, mean
    cdef Py_ssize_t i, e, j, lo, hi
    for i in range(n):
        d = y[i] - xbar
        v = v + d * d
    neumaier(&totals[depth], &comps[depth], v)
    if depth == t_max:
        return
    child = y + n
    for e in range(m):
        memcpy(child, y, n * sizeof(double))
        lo = O[e]
        hi = O[e + 1]
        s = child[V[lo]]
        for j in range(lo + 1, hi):
            s = s + child[V[j]]
        mean = s / <double>(hi - lo)
        for j in range(lo, hi):
            child[V[j]] = mean
        visit(V, O, m, n, xbar, states, depth + 1, t_max, totals, comps)


def enumerate_sq_norms(verts, offsets, x0, double xbar, Py_ssize_t t_max):
    cdef int64_t[::1] V = np.ascontiguousarray(verts, dtype=np.int64)
    cdef int64_t[::1] O = np.ascontiguousarray(offsets, dtype=np.int64)
    cdef double[::1] X0 = np.ascontiguousarray(x0, dtype=np.float64)
    cdef Py_ssize_t n = X0.shape[0]
    cdef Py_ssize_t m = O.shape[0] - 1
    states_arr = np.zeros((t_max + 1) * max(n, 1))
    totals_arr = np.zeros(t_max + 1)
    comps_arr = np.zeros(t_max + 1)
    cdef double[::1] states = states_arr
    cdef double[::1] totals = totals_arr
    cdef double[::1] comps = comps_arr
    cdef const int64_t* vp = &V[0] if V.shape[0] > 0 else NULL
    if n > 0:
        states[:n] = X0
    with nogil:
        visit(vp, &O[0], m, n, xbar, &states[0], 0, t_max, &totals[0], &comps[0])
    return totals_arr + comps_arr


def jacobi_eigenvalues(a, double tol, int max_sweeps):
    A_arr = np.array(a, dtype=np.float64, order="C", copy=True)
    cdef double[:, ::1] A = A_arr
    cdef Py_ssize_t n = A.shape[0]
    cdef Py_ssize_t p, q, k
    cdef int sweep
    cdef double off, apq, app, aqq, g, theta, t, c, s, akp, akq
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                if fabs(A[p, q]) > off:
                    off = fabs(A[p, q])
        if off < tol:
            return np.diag(A_arr).copy(), off, sweep
        if sweep == max_sweeps:
            break
        with nogil:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    if apq == 0.0:
                        continue
                    app = A[p, p]
                    aqq = A[q, q]
                    g = 100.0 * fabs(apq)
                    if sweep > 3 and fabs(app) + g == fabs(app) and fabs(aqq) + g == fabs(aqq):
                        A[p, q] = 0.0
                        A[q, p] = 0.0
                        continue
                    theta = (aqq - app) / (2.0 * apq)
                    if fabs(theta) > 1e150:
                        t = 0.5 / theta
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                        if theta < 0.0:
                            t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        akp = A[k, p]
                        akq = A[k, q]
                        A[k, p] = c * akp - s * akq
                        A[k, q] = s * akp + c * akq
                    for k in range(n):
                        A[p, k] = A[k, p]
                        A[q, k] = A[k, q]
                    A[p, p] = app - t * apq
                    A[q, q] = aqq + t * apq
                    A[p, q] = 0.0
                    A[q, p] = 0.0
    return np.diag(A_arr).copy(), off, -1
