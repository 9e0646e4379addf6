"""Bound states of the Woods-Saxon well (``V = -W * shape``) with the matched mass.

Eigenvalues are the energies where ``F(E) = S V / (T U) - exp(4 eps a L) (2 eps - 1)/(2 eps + 1)``
vanishes. ``F`` is complex; its real and imaginary parts are bracketed
separately on a uniform grid and a root is accepted only where both vanish
together.
"""
import cmath
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import model
from .errors import NotAnEigenvalue, PoleError, SingularEnergy
from .specfun import gamma_ratio

log = logging.getLogger(__name__)

REGULAR = "regular"
EDGE = "edge"

RESIDUAL_TOL = 1e-8
EDGE_TOL = 1e-6


@dataclass(frozen=True)
class EigenCoefficients:
    """``S, Tc, U, V``; ``Tc`` is the combination usually written ``T``."""

    S: complex
    Tc: complex
    U: complex
    V: complex


def _combination_args(eps, nu, lam):
    return {
        "S": ([1 + 2 * nu, 1 - 2 * eps], [1 - eps + nu - lam, 1 - eps + nu + lam]),
        "Tc": ([1 + 2 * nu, 2 * eps - 1], [eps + nu + lam, eps + nu - lam]),
        "U": ([1 + 2 * nu, 1 + 2 * eps], [1 + eps + nu + lam, 1 + eps + nu - lam]),
        "V": ([1 + 2 * nu, -1 - 2 * eps], [-eps + nu + lam, -eps + nu - lam]),
    }


def _ratio(num, den, name, E):
    try:
        return gamma_ratio(num, den)
    except PoleError as exc:
        raise SingularEnergy(f"{name} at E = {E}: {exc}", energy=E, coefficient=name) from exc


def eigen_coefficients(E, p):
    bx = model.bound_exponents(E, p)
    args = _combination_args(bx.epsilon, bx.nu, bx.lam)
    return EigenCoefficients(**{k: _ratio(n, d, k, E) for k, (n, d) in args.items()})


def _sv_over_tu(bx, E):
    # one log-sum; the Gamma(1 + 2 nu) factors cancel
    args = _combination_args(bx.epsilon, bx.nu, bx.lam)
    num = [args["S"][0][1], args["V"][0][1]] + args["Tc"][1] + args["U"][1]
    den = [args["Tc"][0][1], args["U"][0][1]] + args["S"][1] + args["V"][1]
    return _ratio(num, den, "SV/(TU)", E)


def f_eigen(E, p):
    """Complex eigenvalue residual ``F(E)``; zero exactly at bound-state energies."""
    bx = model.bound_exponents(E, p)
    eps = bx.epsilon
    return _sv_over_tu(bx, E) - cmath.exp(4 * eps * p.a * p.L) * (2 * eps - 1) / (2 * eps + 1)


@dataclass(frozen=True)
class Eigenvalue:
    E: float
    residual: float
    kind: str = REGULAR


@dataclass
class Spectrum:
    eigenvalues: list
    params: model.PhysParams
    grid_meta: dict = field(default_factory=dict)

    @property
    def energies(self):
        return [ev.E for ev in self.eigenvalues]

    def regular(self):
        return [ev for ev in self.eigenvalues if ev.kind == REGULAR]

    def __len__(self):
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(self.eigenvalues)


def scan_interval(p, lo=None, hi=None):
    """Inset scan interval inside the bound-state window."""
    wlo, whi = model.bound_window(p)
    delta = 1e-6 * max(p.W, p.m0)
    lo = wlo if lo is None else max(lo, wlo)
    hi = whi if hi is None else min(hi, whi)
    return lo + delta, hi - delta


def _safe(f, E):
    try:
        return f(E)
    except SingularEnergy:
        return complex("nan")


def _brackets(xs, ys):
    ok = np.isfinite(ys[:-1]) & np.isfinite(ys[1:])
    change = ok & (np.sign(ys[:-1]) * np.sign(ys[1:]) < 0)
    return np.flatnonzero(change)


def _refine(g, lo, hi, tol):
    return brentq(g, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps)


def spectrum(p, n_grid=2000, refine_tol=1e-10, interval=None):
    """Bound-state energies of the PDM well, ascending.

    A uniform grid of ``n_grid`` points covers the inset window
    ``(max(-W, -m0), m0)``; sign changes of ``Re F`` and of ``Im F`` are
    refined independently and paired when they agree within
    ``10 * refine_tol``. Pairs whose midpoint residual ``|F|`` is not below
    1e-8 (typically a pole of ``F`` crossed by both parts) are rejected and
    recorded in ``grid_meta``.
    """
    if n_grid < 500:
        raise ValueError("n_grid must be at least 500")
    lo, hi = scan_interval(p, *(interval or (None, None)))
    xs = np.linspace(lo, hi, n_grid)
    fs = np.array([_safe(lambda e: f_eigen(e, p), e) for e in xs])
    parts = {"re": (fs.real, lambda e: f_eigen(e, p).real), "im": (fs.imag, lambda e: f_eigen(e, p).imag)}

    roots = {}
    unresolved = []
    for name, (ys, g) in parts.items():
        roots[name] = []
        for i in _brackets(xs, ys):
            try:
                roots[name].append(_refine(g, xs[i], xs[i + 1], refine_tol))
            except (ValueError, RuntimeError, SingularEnergy) as exc:
                unresolved.append({"part": name, "bracket": [xs[i], xs[i + 1]], "reason": str(exc)})

    found, rejected = [], []
    im_roots = list(roots["im"])
    for er in roots["re"]:
        match = [ei for ei in im_roots if abs(ei - er) < 10 * refine_tol]
        if not match:
            continue
        ei = min(match, key=lambda v: abs(v - er))
        im_roots.remove(ei)
        E = 0.5 * (er + ei)
        res = abs(_safe(lambda e: f_eigen(e, p), E))
        if not res < RESIDUAL_TOL:
            rejected.append({"E": E, "residual": res})
            continue
        kind = EDGE if abs(E + p.m0) < EDGE_TOL else REGULAR
        found.append(Eigenvalue(E, res, kind))

    found.sort(key=lambda ev: ev.E)
    meta = {
        "method": "analytic",
        "n_grid": n_grid,
        "refine_tol": refine_tol,
        "interval": [lo, hi],
        "re_roots": len(roots["re"]),
        "im_roots": len(roots["im"]),
        "rejected": rejected,
        "unresolved": unresolved,
    }
    if rejected or unresolved:
        log.info("spectrum: %d rejected pairs, %d unresolved brackets", len(rejected), len(unresolved))
    return Spectrum(found, p, meta)


def coefficient_ratio(E, p, check=True):
    """``D'/A'``, the right-to-left amplitude ratio of the bound state at ``E``.

    The two closed forms ``(Tc/V) (2 eps - 1)/(2 eps + 1) exp(2 eps a L)`` and
    ``(S/U) exp(-2 eps a L)`` coincide exactly when ``F(E) = 0``; the second
    is returned.
    """
    res = abs(f_eigen(E, p))
    if check and not res < RESIDUAL_TOL:
        raise NotAnEigenvalue(f"|F({E})| = {res:.3g} is not below {RESIDUAL_TOL:g}")
    bx = model.bound_exponents(E, p)
    eps = bx.epsilon
    c = eigen_coefficients(E, p)
    return c.S / c.U * cmath.exp(-2 * eps * p.a * p.L)


def coefficient_ratio_forms(E, p):
    """Both closed forms of ``D'/A'`` (no eigenvalue check)."""
    eps = model.bound_exponents(E, p).epsilon
    c = eigen_coefficients(E, p)
    aL = p.a * p.L
    first = c.Tc / c.V * (2 * eps - 1) / (2 * eps + 1) * cmath.exp(2 * eps * aL)
    second = c.S / c.U * cmath.exp(-2 * eps * aL)
    return first, second
