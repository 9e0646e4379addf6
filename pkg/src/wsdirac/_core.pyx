# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: Gauss series summation and the fixed-step RK4 sweep.

Both functions mirror ``wsdirac._pykernels`` exactly in signature and
return conventions; ``wsdirac._backend`` picks one at import time.
"""
import numpy as np

cdef inline double _abs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


cdef int _series(double complex a, double complex b, double complex c,
                 double x, int max_terms, double rtol,
                 double complex *out) nogil:
    cdef double complex term = 1.0
    cdef double complex total = 1.0
    cdef double rtol2 = rtol * rtol
    cdef int n = 0
    if x == 0.0:
        out[0] = total
        return 1
    while n < max_terms:
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        total = total + term
        n += 1
        if _abs2(term) <= rtol2 * _abs2(total):
            out[0] = total
            return n
    out[0] = total
    return -1


def hyp2f1_series(double complex a, double complex b, double complex c,
                  double x, int max_terms=20000, double rtol=1e-16):
    """Return ``(value, n_terms)``; ``n_terms == -1`` flags a hit cap."""
    cdef double complex out
    cdef int n = _series(a, b, c, x, max_terms, rtol, &out)
    return complex(out), n


def hyp2f1_series_many(double complex a, double complex b, double complex c,
                       double[::1] xs, int max_terms=20000, double rtol=1e-16):
    """Vector form of :func:`hyp2f1_series`; returns ``(values, ok)``."""
    cdef Py_ssize_t i, n = xs.shape[0]
    result = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] res = result
    cdef double complex out
    cdef bint ok = True
    with nogil:
        for i in range(n):
            if _series(a, b, c, xs[i], max_terms, rtol, &out) < 0:
                ok = False
            res[i] = out
    return result, ok


def rk4_dirac(double complex phi0, double complex chi0, double energy,
              double[::1] pot, double[::1] mass, double h,
              bint store=False, double blowup=1e12):
    """Integrate the first-order (phi, chi) system with classic RK4.

    ``pot`` and ``mass`` are sampled on the half-step lattice
    ``x0 + j*h/2`` for ``j = 0 .. 2n``. Returns ``(phi, chi, status)`` where
    ``phi``/``chi`` are end values, or full-step trajectories when
    ``store`` is set. ``status`` is 0 on success, otherwise the 1-based
    step index at which ``|state|`` exceeded ``blowup``.
    """
    cdef Py_ssize_t nsteps = (pot.shape[0] - 1) // 2
    cdef Py_ssize_t i
    cdef double complex p = phi0, q = chi0
    cdef double complex k1p, k1q, k2p, k2q, k3p, k3q, k4p, k4q, tp, tq
    cdef double complex I = 1j
    cdef double e0, e1, e2, m0, m1, m2, hh = 0.5 * h, h6 = h / 6.0
    cdef double lim2 = blowup * blowup
    cdef int status = 0
    phis = np.zeros(nsteps + 1 if store else 0, dtype=np.complex128)
    chis = np.zeros(nsteps + 1 if store else 0, dtype=np.complex128)
    cdef double complex[::1] ph = phis
    cdef double complex[::1] ch = chis
    if store:
        ph[0] = p
        ch[0] = q
    with nogil:
        for i in range(nsteps):
            e0 = energy - pot[2 * i]
            e1 = energy - pot[2 * i + 1]
            e2 = energy - pot[2 * i + 2]
            m0 = mass[2 * i]
            m1 = mass[2 * i + 1]
            m2 = mass[2 * i + 2]
            k1p = I * (e0 * p - m0 * q)
            k1q = I * (m0 * p - e0 * q)
            tp = p + hh * k1p
            tq = q + hh * k1q
            k2p = I * (e1 * tp - m1 * tq)
            k2q = I * (m1 * tp - e1 * tq)
            tp = p + hh * k2p
            tq = q + hh * k2q
            k3p = I * (e1 * tp - m1 * tq)
            k3q = I * (m1 * tp - e1 * tq)
            tp = p + h * k3p
            tq = q + h * k3q
            k4p = I * (e2 * tp - m2 * tq)
            k4q = I * (m2 * tp - e2 * tq)
            p = p + h6 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
            q = q + h6 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)
            if store:
                ph[i + 1] = p
                ch[i + 1] = q
            if _abs2(p) + _abs2(q) > lim2:
                status = <int>(i + 1)
                break
    if store:
        return phis, chis, status
    return complex(p), complex(q), status
