# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled displacement kernel, same contract as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, sqrt, lgamma, cos, sin, atan2, hypot

cnp.import_array()


cdef void _fill_one(double complex[:, :] out, double re, double im,
                    int nrows, int ncols, double[:] h, double[:] lgk) noexcept nogil:
    cdef int nlo = nrows if nrows < ncols else ncols
    cdef int nk = nrows if nrows > ncols else ncols
    cdef double r = hypot(re, im)
    cdef double x = r * r
    cdef double phi = atan2(im, re)
    cdef double logr = log(r) if r > 0 else 0.0
    cdef int kk, j, m, n
    cdef double kd, a, b, sgn
    cdef double complex ph
    for kk in range(nk):
        kd = kk
        if r > 0:
            h[0] = exp(-0.5 * x + kd * logr - 0.5 * lgk[kk])
        else:
            h[0] = 1.0 if kk == 0 else 0.0
        if nlo > 1:
            h[1] = (1.0 + kd - x) * h[0] / sqrt(kd + 1.0)
        for j in range(1, nlo - 1):
            a = (2 * j + 1 + kd - x) * h[j]
            b = sqrt(j * (j + kd)) * h[j - 1]
            h[j + 1] = (a - b) / sqrt((j + 1) * (j + 1 + kd))
        ph = cos(kd * phi) + 1j * sin(kd * phi)
        for j in range(nlo):
            m = j + kk
            if m < nrows:
                out[m, j] = h[j] * ph
            n = j + kk
            if kk > 0 and n < ncols:
                sgn = -1.0 if (kk & 1) else 1.0
                out[j, n] = sgn * h[j] * ph.conjugate()


def displacement_blocks(alphas, int nrows, int ncols):
    cdef double complex[:] al = np.ascontiguousarray(alphas, dtype=complex).ravel()
    cdef Py_ssize_t P = al.shape[0]
    out_arr = np.zeros((P, nrows, ncols), dtype=complex)
    if P == 0 or nrows == 0 or ncols == 0:
        return out_arr
    cdef double complex[:, :, :] out = out_arr
    cdef int nlo = nrows if nrows < ncols else ncols
    cdef int nk = nrows if nrows > ncols else ncols
    cdef double[:] h = np.zeros(nlo + 1)
    cdef double[:] lgk = np.array([lgamma(k + 1.0) for k in range(nk)], dtype=float)
    cdef Py_ssize_t p
    with nogil:
        for p in range(P):
            _fill_one(out[p], al[p].real, al[p].imag, nrows, ncols, h, lgk)
    return out_arr
