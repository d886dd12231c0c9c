# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Semantics match ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, cos, sin, tan, atan, sqrt, NAN

cnp.import_array()


cdef inline double _reflect(double t, double[:] center, double[:] e1, double[:] e2,
                            double radius, double px, double py, double pz,
                            bint spherical) nogil:
    cdef double ct = cos(t), st = sin(t)
    cdef double vx = center[0] + radius * (ct * e1[0] + st * e2[0])
    cdef double vy = center[1] + radius * (ct * e1[1] + st * e2[1])
    cdef double vz = center[2] + radius * (ct * e1[2] + st * e2[2])
    cdef double nx, ny, nz, alpha, beta
    if spherical:
        nx = vy * pz - vz * py
        ny = vz * px - vx * pz
        nz = vx * py - vy * px
    else:
        nx = -(py - vy)
        ny = px - vx
        nz = 0.0
    alpha = nx * e1[0] + ny * e1[1] + nz * e1[2]
    beta = nx * e2[0] + ny * e2[1] + nz * e2[2]
    if alpha == 0.0 and beta == 0.0:
        return NAN
    return 2.0 * atan2(beta, alpha) - t


def closure_chain(double[:] ts, double[:] center, double[:] e1, double[:] e2,
                  double radius, double[:, :] points, bint spherical):
    cdef Py_ssize_t n = ts.shape[0], i
    out = np.empty((n, 3), dtype=np.float64)
    cdef double[:, :] o = out
    cdef double t2, t3, t4
    cdef double p1x = points[0, 0], p1y = points[0, 1], p1z = points[0, 2]
    cdef double p2x = points[1, 0], p2y = points[1, 1], p2z = points[1, 2]
    cdef double p3x = points[2, 0], p3y = points[2, 1], p3z = points[2, 2]
    with nogil:
        for i in range(n):
            t2 = _reflect(ts[i], center, e1, e2, radius, p3x, p3y, p3z, spherical)
            t3 = _reflect(t2, center, e1, e2, radius, p1x, p1y, p1z, spherical)
            t4 = _reflect(t3, center, e1, e2, radius, p2x, p2y, p2z, spherical)
            o[i, 0] = t2
            o[i, 1] = t3
            o[i, 2] = t4
    return out


def lhuilier_many(double[:] a, double[:] b, double[:] c):
    cdef Py_ssize_t n = a.shape[0], i
    out = np.empty(n, dtype=np.float64)
    cdef double[:] o = out
    cdef double s, p
    with nogil:
        for i in range(n):
            s = 0.5 * (a[i] + b[i] + c[i])
            p = tan(0.5 * s) * tan(0.5 * (s - a[i])) * tan(0.5 * (s - b[i])) * tan(0.5 * (s - c[i]))
            if p < 0.0:
                p = 0.0
            o[i] = 4.0 * atan(sqrt(p))
    return out
