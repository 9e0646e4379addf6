"""Complex log-gamma, gamma-ratio products and Gauss 2F1 on the real line.

Only what the closed-form solution needs: ``2F1(a, b; c; x)`` with complex
parameters and real ``x < 1``. Three evaluation routes are used,

* direct series for ``|x| <= 0.5``;
* Pfaff, ``(1-x)**-a * 2F1(a, c-b; c; x/(x-1))``, for ``x < -0.5``;
* the ``z -> 1-z`` connection formula for ``0.5 < x < 1``.

Callers that know ``1 - x`` more accurately than floating-point
subtraction can provide it through ``xc``; near ``x = 1`` this matters
(``1 - x`` is as small as ``exp(-a*L)`` in the matching region).
"""
import cmath
import math

import numpy as np

from . import _backend
from .errors import ConvergenceError, DegenerateError, PoleError

__all__ = ["log_gamma", "gamma_ratio", "hyp2f1", "hyp2f1_deriv", "is_gamma_pole"]

# Lanczos coefficients, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_MAX_EXP = 709.78

POLE_TOL = 1e-12
DEGENERATE_TOL = 1e-10
SERIES_RTOL = 1e-16
SERIES_CAP = 20000


def is_gamma_pole(z, tol=POLE_TOL):
    """True when ``z`` lies within ``tol`` of 0, -1, -2, ..."""
    z = complex(z)
    if z.real > 0.5:
        return False
    n = round(z.real)
    return abs(z - n) < tol


def _log_sin_pi(z):
    # log(sin(pi z)) without overflowing exp(|Im(pi z)|); defined mod 2*pi*i
    if z.imag >= 0.0:
        t = cmath.exp(2j * math.pi * z)
        return -1j * math.pi * z + cmath.log((t - 1.0) / 2j)
    t = cmath.exp(-2j * math.pi * z)
    return 1j * math.pi * z + cmath.log((1.0 - t) / 2j)


def log_gamma(z):
    """Complex ``log Gamma(z)``.

    For ``Re z >= 0.5`` this is the analytic continuation of the real
    log-gamma from the positive axis. For ``Re z < 0.5`` it comes from the
    reflection formula and is only defined modulo ``2*pi*i``, which is all
    that exponentiated products need.

    Raises
    ------
    PoleError
        If ``z`` is within 1e-12 of a non-positive integer.
    """
    z = complex(z)
    if is_gamma_pole(z):
        raise PoleError(f"log_gamma: pole at z = {z}")
    if z.real < 0.5:
        return _LOG_PI - _log_sin_pi(z) - log_gamma(1.0 - z)
    w = z - 1.0
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (w + k)
    t = w + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (w + 0.5) * cmath.log(t) - t + cmath.log(acc)


def gamma_ratio(numerators, denominators):
    """``prod Gamma(numerators) / prod Gamma(denominators)`` via log-sums.

    A denominator on a pole contributes ``1/Gamma = 0`` and the product is
    zero. A numerator on a pole raises :class:`PoleError`.
    """
    total = 0j
    for z in numerators:
        total += log_gamma(z)
    for z in denominators:
        if is_gamma_pole(z):
            return 0j
        total -= log_gamma(z)
    if total.real > _MAX_EXP:
        raise OverflowError(f"gamma_ratio: log-magnitude {total.real:.1f} out of range")
    return cmath.exp(total)


def _series(a, b, c, xs):
    values, ok = _backend.hyp2f1_series_many(a, b, c, xs, SERIES_CAP, SERIES_RTOL)
    if not ok:
        raise ConvergenceError(f"2F1 series did not converge in {SERIES_CAP} terms")
    return values


def _nearest_int_gap(s):
    return abs(s - round(s.real))


def _connection(a, b, c, xc):
    """2F1 at x = 1 - xc from the two series in powers of ``xc``."""
    s = c - a - b
    if _nearest_int_gap(s) < DEGENERATE_TOL:
        raise DegenerateError(f"c - a - b = {s} is (nearly) an integer")
    c1 = gamma_ratio([c, s], [c - a, c - b])
    c2 = gamma_ratio([c, -s], [a, b])
    f1 = _series(a, b, 1.0 - s, xc)
    f2 = _series(c - a, c - b, 1.0 + s, xc)
    return c1 * f1 + c2 * np.exp(s * np.log(xc)) * f2


def _near_one(a, b, c, x, xc):
    out = np.empty(x.shape, dtype=np.complex128)
    low = x <= 0.5
    if low.any():
        out[low] = _series(a, b, c, x[low])
    if (~low).any():
        out[~low] = _connection(a, b, c, xc[~low])
    return out


def hyp2f1(a, b, c, x, xc=None):
    """Gauss hypergeometric function for complex ``a, b, c`` and real ``x < 1``.

    ``x`` may be a scalar or an array; ``xc`` optionally supplies ``1 - x``.

    Raises
    ------
    PoleError
        ``c`` is a non-positive integer.
    DegenerateError
        The ``1 - x`` connection is needed and ``c - a - b`` (or ``b - a``
        after Pfaff) is within 1e-10 of an integer.
    ConvergenceError
        A series hit the 20000-term cap.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if is_gamma_pole(c):
        raise PoleError(f"hyp2f1: c = {c} is a non-positive integer")
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(np.asarray(x, dtype=float))
    xc = 1.0 - x if xc is None else np.atleast_1d(np.asarray(xc, dtype=float))
    if np.any(xc <= 0.0):
        raise ValueError("hyp2f1 is only evaluated for real x < 1")

    out = np.empty(x.shape, dtype=np.complex128)
    mid = np.abs(x) <= 0.5
    high = x > 0.5
    neg = x < -0.5
    if mid.any():
        out[mid] = _series(a, b, c, x[mid])
    if high.any():
        out[high] = _connection(a, b, c, xc[high])
    if neg.any():
        # x/(x-1) lies in (1/3, 1); its complement is 1/(1-x)
        w = x[neg] / (x[neg] - 1.0)
        wc = 1.0 / xc[neg]
        out[neg] = np.exp(-a * np.log(xc[neg])) * _near_one(a, c - b, c, w, wc)
    return complex(out[0]) if scalar else out


def hyp2f1_deriv(a, b, c, x, xc=None):
    """``d/dx 2F1(a, b; c; x) = (a b / c) 2F1(a+1, b+1; c+1; x)``."""
    a, b, c = complex(a), complex(b), complex(c)
    return (a * b / c) * hyp2f1(a + 1.0, b + 1.0, c + 1.0, x, xc)
