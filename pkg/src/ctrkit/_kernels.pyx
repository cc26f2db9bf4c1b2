# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pair scan. Arithmetic mirrors ``_kernels_py`` operation for operation."""

import numpy as np

cdef double GEOM_TOL = 1e-9


def pair_scan(od, wall, curv, stiff, double min_clearance, double target_curvature,
              Py_ssize_t start, Py_ssize_t stop):
    cdef double[::1] d = np.ascontiguousarray(od, dtype=np.float64)
    cdef double[::1] w = np.ascontiguousarray(wall, dtype=np.float64)
    cdef double[::1] c = np.ascontiguousarray(curv, dtype=np.float64)
    cdef double[::1] s = np.ascontiguousarray(stiff, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0]
    cdef Py_ssize_t i, j, m = 0
    cdef double need = min_clearance - GEOM_TOL
    cdef double bore, so, ko, si, ki, k, lo, hi

    with nogil:
        for i in range(start, stop):
            bore = d[i] - 2.0 * w[i]
            if bore < 0.0:
                bore = 0.0
            for j in range(n):
                if bore - d[j] >= need:
                    m += 1

    oi_a = np.empty(m, dtype=np.intp)
    ii_a = np.empty(m, dtype=np.intp)
    k_a = np.empty(m, dtype=np.float64)
    s_a = np.empty(m, dtype=np.float64)
    cdef Py_ssize_t[::1] oi = oi_a
    cdef Py_ssize_t[::1] ii = ii_a
    cdef double[::1] kv = k_a
    cdef double[::1] sv = s_a

    m = 0
    with nogil:
        for i in range(start, stop):
            bore = d[i] - 2.0 * w[i]
            if bore < 0.0:
                bore = 0.0
            so = s[i]
            ko = c[i]
            for j in range(n):
                if bore - d[j] < need:
                    continue
                si = s[j]
                ki = c[j]
                k = (0.0 + so * ko + si * ki) / (0.0 + so + si)
                if ko <= ki:
                    lo = ko
                    hi = ki
                else:
                    lo = ki
                    hi = ko
                if k < lo:
                    k = lo
                elif k > hi:
                    k = hi
                oi[m] = i
                ii[m] = j
                kv[m] = k
                sv[m] = k - target_curvature if k >= target_curvature else target_curvature - k
                m += 1
    return oi_a, ii_a, k_a, s_a
