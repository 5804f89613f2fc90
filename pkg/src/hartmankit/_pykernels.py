"""Numpy implementations of the scattering kernels.

These are the reference versions; ``_ckernels`` (Cython) must agree with
them to rounding. Selected by :mod:`hartmankit.kernels`.
"""

import numpy as np

C = 299792458.0


def slab_amplitudes(q_out, p_in, kappa_d):
    """Symmetric evanescent slab: transmission and reflection amplitudes.

    ``q_out`` is the (real) admittance of the medium on both sides, ``p_in``
    the magnitude of the (imaginary) admittance inside the slab and
    ``kappa_d`` the attenuation exponent. Transmission is referenced to the
    exit face, reflection to the entry face.
    """
    q = np.asarray(q_out, dtype=float)
    p = np.asarray(p_in, dtype=float)
    x = np.asarray(kappa_d, dtype=float)
    a = 0.5 * (p / q - q / p)
    b = 0.5 * (p / q + q / p)
    th = np.tanh(x)
    e = np.exp(-x)
    sech = 2.0 * e / (1.0 + e * e)
    den = 1.0 + 1j * a * th
    return sech / den, -1j * b * th / den


def stack_amplitudes(n, thickness, n_in, n_out, omega):
    """Normal-incidence characteristic-matrix product over a frequency grid."""
    n = np.asarray(n, dtype=float)
    thickness = np.asarray(thickness, dtype=float)
    omega = np.asarray(omega, dtype=float)
    m11 = np.ones(omega.shape, dtype=complex)
    m12 = np.zeros(omega.shape, dtype=complex)
    m21 = np.zeros(omega.shape, dtype=complex)
    m22 = np.ones(omega.shape, dtype=complex)
    for nj, dj in zip(n, thickness):
        delta = omega * (nj * dj / C)
        cs = np.cos(delta)
        sn = np.sin(delta)
        l12 = -1j * sn / nj
        l21 = -1j * nj * sn
        m11, m12, m21, m22 = (
            m11 * cs + m12 * l21,
            m11 * l12 + m12 * cs,
            m21 * cs + m22 * l21,
            m21 * l12 + m22 * cs,
        )
    a = n_in * m11 + n_in * n_out * m12
    b = m21 + n_out * m22
    den = a + b
    return 2.0 * n_in / den, (a - b) / den
