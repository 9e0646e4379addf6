"""Fallback kernels used when the compiled ``_core`` extension is absent.

Same signatures and return conventions as ``_core.pyx``. The RK4 sweep is
vectorised by building every step's 2x2 propagator with numpy (the system
is linear, so one RK4 step is exactly a matrix) and then applying them in
a plain Python loop.
"""
import numpy as np


def hyp2f1_series(a, b, c, x, max_terms=20000, rtol=1e-16):
    a, b, c, x = complex(a), complex(b), complex(c), float(x)
    term = total = 1.0 + 0.0j
    if x == 0.0:
        return total, 1
    rtol2 = rtol * rtol
    for n in range(max_terms):
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        total += term
        if abs(term) ** 2 <= rtol2 * abs(total) ** 2:
            return total, n + 1
    return total, -1


def hyp2f1_series_many(a, b, c, xs, max_terms=20000, rtol=1e-16):
    values = np.empty(len(xs), dtype=np.complex128)
    ok = True
    for i, x in enumerate(xs):
        values[i], n = hyp2f1_series(a, b, c, x, max_terms, rtol)
        ok = ok and n >= 0
    return values, ok


def _generator(e, m):
    g = np.empty(e.shape + (2, 2), dtype=np.complex128)
    g[..., 0, 0] = 1j * e
    g[..., 0, 1] = -1j * m
    g[..., 1, 0] = 1j * m
    g[..., 1, 1] = -1j * e
    return g


def _propagators(energy, pot, mass, h):
    e = energy - np.asarray(pot, dtype=float)
    m = np.asarray(mass, dtype=float)
    a0 = _generator(e[0:-1:2], m[0:-1:2])
    a1 = _generator(e[1::2], m[1::2])
    a2 = _generator(e[2::2], m[2::2])
    eye = np.eye(2, dtype=np.complex128)
    s2 = eye + 0.5 * h * a0
    s3 = eye + 0.5 * h * (a1 @ s2)
    s4 = eye + h * (a1 @ s3)
    return eye + (h / 6.0) * (a0 + 2.0 * (a1 @ s2) + 2.0 * (a1 @ s3) + a2 @ s4)


def rk4_dirac(phi0, chi0, energy, pot, mass, h, store=False, blowup=1e12):
    props = _propagators(float(energy), pot, mass, float(h)).tolist()
    p, q = complex(phi0), complex(chi0)
    lim2 = blowup * blowup
    status = 0
    phis = [p] if store else None
    chis = [q] if store else None
    for i, ((m00, m01), (m10, m11)) in enumerate(props):
        p, q = m00 * p + m01 * q, m10 * p + m11 * q
        if store:
            phis.append(p)
            chis.append(q)
        if abs(p) ** 2 + abs(q) ** 2 > lim2:
            status = i + 1
            break
    if store:
        n = len(props) + 1
        out_p = np.zeros(n, dtype=np.complex128)
        out_q = np.zeros(n, dtype=np.complex128)
        out_p[: len(phis)] = phis
        out_q[: len(chis)] = chis
        return out_p, out_q, status
    return p, q, status
