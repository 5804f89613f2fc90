# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scattering kernels; same contract as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport tanh, exp, cos, sin

cnp.import_array()

cdef double C = 299792458.0


def _flat(arr, shape):
    return np.ascontiguousarray(np.broadcast_to(np.asarray(arr, dtype=np.float64), shape)).ravel()


def slab_amplitudes(q_out, p_in, kappa_d):
    shape = np.broadcast(q_out, p_in, kappa_d).shape
    cdef cnp.ndarray[double, ndim=1] q = _flat(q_out, shape)
    cdef cnp.ndarray[double, ndim=1] p = _flat(p_in, shape)
    cdef cnp.ndarray[double, ndim=1] x = _flat(kappa_d, shape)
    cdef Py_ssize_t i, npts = q.shape[0]
    cdef cnp.ndarray[double complex, ndim=1] t = np.empty(npts, dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=1] r = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] tv = t
    cdef double complex[::1] rv = r
    cdef double a, b, ratio, th, e, sech, at, inv
    with nogil:
        for i in range(npts):
            ratio = p[i] / q[i]
            a = 0.5 * (ratio - 1.0 / ratio)
            b = 0.5 * (ratio + 1.0 / ratio)
            th = tanh(x[i])
            e = exp(-x[i])
            sech = 2.0 * e / (1.0 + e * e)
            # 1 / (1 + i a th) = (1 - i a th) / (1 + (a th)^2)
            at = a * th
            inv = 1.0 / (1.0 + at * at)
            tv[i].real = sech * inv
            tv[i].imag = -sech * at * inv
            rv[i].real = -b * th * at * inv
            rv[i].imag = -b * th * inv
    return t.reshape(shape), r.reshape(shape)


def stack_amplitudes(n, thickness, double n_in, double n_out, omega):
    cdef cnp.ndarray[double, ndim=1] nn = np.ascontiguousarray(n, dtype=np.float64).ravel()
    cdef cnp.ndarray[double, ndim=1] dd = np.ascontiguousarray(thickness, dtype=np.float64).ravel()
    om_arr = np.asarray(omega, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] om = np.ascontiguousarray(om_arr).ravel()
    cdef Py_ssize_t i, j, npts = om.shape[0], nlay = nn.shape[0]
    cdef cnp.ndarray[double complex, ndim=1] t = np.empty(npts, dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=1] r = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] tv = t
    cdef double complex[::1] rv = r
    cdef double[::1] kl = nn * dd / C  # phase per unit omega
    cdef double[::1] nl = nn
    cdef double[::1] invn = 1.0 / nn
    cdef double w, delta, cs, sn, u11, u12, u21, u22, v11, v12, v21
    cdef double ar, ai, br, bi, dr, di, nr, ni, den2
    with nogil:
        for i in range(npts):
            w = om[i]
            # lossless matrices stay of the form [[u11, i u12], [i u21, u22]] with real u
            u11 = 1.0
            u12 = 0.0
            u21 = 0.0
            u22 = 1.0
            for j in range(nlay):
                delta = w * kl[j]
                cs = cos(delta)
                sn = sin(delta)
                # layer: [[cs, -i sn/n], [-i n sn, cs]]
                v11 = u11 * cs + u12 * nl[j] * sn
                v12 = -u11 * sn * invn[j] + u12 * cs
                v21 = u21 * cs - u22 * nl[j] * sn
                u22 = u21 * sn * invn[j] + u22 * cs
                u11 = v11
                u12 = v12
                u21 = v21
            # A = n_in (M11 + n_out M12), B = M21 + n_out M22
            ar = n_in * u11
            ai = n_in * n_out * u12
            br = n_out * u22
            bi = u21
            dr = ar + br
            di = ai + bi
            den2 = dr * dr + di * di
            tv[i].real = 2.0 * n_in * dr / den2
            tv[i].imag = -2.0 * n_in * di / den2
            nr = ar - br
            ni = ai - bi
            rv[i].real = (nr * dr + ni * di) / den2
            rv[i].imag = (ni * dr - nr * di) / den2
    return t.reshape(om_arr.shape), r.reshape(om_arr.shape)
