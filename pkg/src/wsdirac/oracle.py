"""Numerical reference solver: fixed-step RK4 on the first-order Dirac system.

In terms of ``phi = u1 + i u2`` and ``chi = u1 - i u2``

    phi' = -i m chi + i (E - V) phi
    chi' =  i m phi - i (E - V) chi

which involves ``m`` but never ``m'``. Any profile ``(V, m)`` that is flat at
the box edges ``+-X`` can be integrated; the Woods-Saxon factory covers both
the matched position-dependent mass and the constant mass ``m0``.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from . import _backend, model
from .boundstates import EDGE, EDGE_TOL, REGULAR, Eigenvalue, Spectrum
from .errors import DomainError, StepError

log = logging.getLogger(__name__)

PDM = "pdm"
CONSTANT = "constant"
FLAT_TOL = 1e-10
BLOWUP = 1e12


@dataclass(frozen=True)
class ProfileSpec:
    """Potential and mass profile on the box ``[-X, X]``.

    ``step`` is the default RK4 step; ``scale`` is the potential strength
    used by the flatness check.
    """

    potential: Callable
    mass: Callable
    mass_mode: str
    m0: float
    X: float
    step: float
    scale: float = 1.0

    def __post_init__(self):
        if self.mass_mode not in (PDM, CONSTANT):
            raise ValueError(f"mass_mode must be {PDM!r} or {CONSTANT!r}")
        if self.X <= 0 or self.step <= 0 or self.m0 <= 0:
            raise ValueError("X, step and m0 must be positive")
        edges = np.array([-self.X, self.X])
        v = np.abs(self.potential(edges))
        m = np.abs(self.mass(edges) - self.m0)
        if np.any(v >= FLAT_TOL * max(abs(self.scale), 1e-300)) or np.any(m >= FLAT_TOL * self.m0):
            raise DomainError(
                f"profile not flat at x = +-{self.X}: |V| = {v.max():.3g}, |m - m0| = {m.max():.3g}"
            )


def woods_saxon_profile(p, sign=model.BARRIER, mass_mode=PDM, X=None, step=None):
    """Woods-Saxon barrier or well with the matched or the constant mass.

    Defaults: box ``X = L + 30/a`` and step ``h = 0.01/a``.
    """
    X = p.L + 30.0 / p.a if X is None else float(X)
    step = 0.01 / p.a if step is None else float(step)
    if mass_mode == PDM:
        mass = lambda x: model.mass(x, p)  # noqa: E731
    elif mass_mode == CONSTANT:
        mass = lambda x: model.constant_mass(x, p)  # noqa: E731
    else:
        raise ValueError(f"mass_mode must be {PDM!r} or {CONSTANT!r}")
    return ProfileSpec(
        potential=lambda x: model.potential(x, p, sign),
        mass=mass,
        mass_mode=mass_mode,
        m0=p.m0,
        X=X,
        step=step,
        scale=p.W,
    )


def _lattice(x0, x1, step):
    n = max(1, int(math.ceil(abs(x1 - x0) / step - 1e-9)))
    h = (x1 - x0) / n
    return n, h, x0 + 0.5 * h * np.arange(2 * n + 1)


def integrate(phi0, chi0, x0, x1, E, profile, step=None, store=False):
    """RK4 from ``x0`` to ``x1`` (either direction) with a fixed step.

    The step is ``profile.step`` (or ``step``), shrunk so that the interval
    holds a whole number of steps. Returns ``(phi, chi)`` at ``x1``, or
    ``(x, phi, chi)`` arrays on the step lattice when ``store`` is set.

    Raises
    ------
    StepError
        ``|phi|^2 + |chi|^2`` exceeded ``1e24`` along the way.
    """
    n, h, xs = _lattice(float(x0), float(x1), profile.step if step is None else step)
    pot = np.ascontiguousarray(profile.potential(xs), dtype=float)
    mass = np.ascontiguousarray(profile.mass(xs), dtype=float)
    phi, chi, status = _backend.rk4_dirac(complex(phi0), complex(chi0), float(E), pot, mass, h, store, BLOWUP)
    if status:
        raise StepError(f"state blew up at x = {xs[2 * status]:.6g} (E = {E})")
    if store:
        return xs[::2], phi, chi
    return phi, chi


@dataclass(frozen=True)
class OracleScattering:
    E: float
    T: float
    R: float
    G: complex
    H: complex
    d1: complex = 1.0


def plane_wave_amplitudes(phi, chi, x, E, k, m0, L):
    """Split ``(phi, chi)`` at ``x < -L`` into ``G e^{-ik(x+L)} + H e^{ik(x+L)}``."""
    em = np.exp(-1j * k * (x + L))
    ep = np.exp(1j * k * (x + L))
    cm, cp = (E + k) / m0, (E - k) / m0
    det = em * ep * (cp - cm)
    G = (phi * ep * cp - chi * ep) / det
    H = (chi * em - phi * em * cm) / det
    return G, H


def oracle_scattering(E, profile, L=None):
    """``T`` and ``R`` by integrating the transmitted wave from ``+X`` to ``-X``.

    The transmitted wave is normalised as ``exp(ik(x - L))`` so that the
    amplitudes are comparable with the closed form; ``L`` defaults to 0 for
    a generic profile. Only amplitudes ``|G|, |H|`` (hence ``T``, ``R``) are
    independent of that choice.
    """
    E = float(E)
    m0 = profile.m0
    if abs(E) <= m0:
        raise DomainError(f"|E| = {abs(E)} <= m0: no propagating states")
    L = 0.0 if L is None else float(L)
    k = math.sqrt(E * E - m0 * m0)
    X = profile.X
    phi0 = np.exp(1j * k * (X - L))
    chi0 = (E - k) / m0 * phi0
    phi, chi = integrate(phi0, chi0, X, -X, E, profile)
    G, H = plane_wave_amplitudes(phi, chi, -X, E, k, m0, L)
    h2 = abs(H) ** 2
    return OracleScattering(E, 1.0 / h2, (E + k) / (E - k) * abs(G) ** 2 / h2, complex(G), complex(H))


def _decaying_seed(E, m0, X, side):
    # real (u1, u2) of the solution decaying outward, scaled to O(1) at x = 0
    kappa = math.sqrt(max(m0 * m0 - E * E, 0.0))
    scale = math.exp(-kappa * X)
    u1 = math.sqrt(m0 + E) * scale
    u2 = side * math.sqrt(m0 - E) * scale
    return complex(u1, u2), complex(u1, -u2)


def shooting_mismatch(E, profile, x_match=0.0):
    """Normalised Wronskian ``Im(phi_L conj(phi_R)) / (|phi_L| |phi_R|)`` at ``x_match``.

    Both inward solutions are real spinors, so ``chi = conj(phi)`` and the
    Wronskian ``phi_L chi_R - phi_R chi_L`` equals ``2i`` times the numerator.
    The value is the sine of the angle between the two spinors and vanishes
    at eigenvalues.
    """
    m0, X = profile.m0, profile.X
    pl, cl = _decaying_seed(E, m0, X, -1.0)
    pr, cr = _decaying_seed(E, m0, X, +1.0)
    phl, _ = integrate(pl, cl, -X, x_match, E, profile)
    phr, _ = integrate(pr, cr, X, x_match, E, profile)
    denom = abs(phl) * abs(phr)
    if denom == 0.0:
        return 0.0
    return float((phl * np.conj(phr)).imag / denom)


def oracle_spectrum(profile, interval, n_grid=800, tol=1e-10):
    """Bound-state energies by shooting from both box edges to ``x = 0``.

    ``interval`` is the search window (inside ``(-W, m0)``). Sign changes of
    the mismatch on a uniform grid are bisected with ``brentq``; brackets
    straddling a jump (mismatch not small at the refined point) are logged
    in ``grid_meta`` instead of being reported. If the window reaches the
    lower threshold ``-m0``, the mismatch is evaluated there and an
    ``edge`` root is reported only when it actually vanishes.
    """
    lo, hi = map(float, interval)
    m0 = profile.m0
    edge_lo = abs(lo + m0) < EDGE_TOL
    lo_s = max(lo, -m0 + EDGE_TOL)
    hi_s = min(hi, m0 - EDGE_TOL)
    xs = np.linspace(lo_s, hi_s, n_grid)
    g = lambda e: shooting_mismatch(e, profile)  # noqa: E731
    ys = np.array([g(e) for e in xs])

    found, unresolved = [], []
    for i in np.flatnonzero(np.sign(ys[:-1]) * np.sign(ys[1:]) < 0):
        E = brentq(g, xs[i], xs[i + 1], xtol=tol, rtol=4 * np.finfo(float).eps)
        res = abs(g(E))
        if res > 1e-6:
            unresolved.append({"bracket": [xs[i], xs[i + 1]], "residual": res})
            continue
        found.append(Eigenvalue(E, res, REGULAR))
    for i in np.flatnonzero(ys == 0.0):
        found.append(Eigenvalue(float(xs[i]), 0.0, REGULAR))

    edge = None
    if edge_lo:
        edge = g(-m0)
        if abs(edge) < EDGE_TOL:
            found.append(Eigenvalue(-m0, abs(edge), EDGE))
    found.sort(key=lambda ev: ev.E)
    meta = {
        "method": "shooting",
        "mass_mode": profile.mass_mode,
        "n_grid": n_grid,
        "tol": tol,
        "interval": [lo_s, hi_s],
        "X": profile.X,
        "step": profile.step,
        "edge_mismatch": edge,
        "unresolved": unresolved,
    }
    return Spectrum(found, None, meta)


def spectrum_for(p, mass_mode=PDM, n_grid=800, tol=1e-10, **profile_options):
    """Oracle spectrum of the Woods-Saxon well over the full window ``[max(-W, -m0), m0)``."""
    prof = woods_saxon_profile(p, model.WELL, mass_mode, **profile_options)
    lo, hi = model.bound_window(p)
    sp = oracle_spectrum(prof, (lo, hi), n_grid, tol)
    sp.params = p
    return sp
