"""Spinor wave functions from the hypergeometric solutions.

Each region is written as ``phi = K(x) F(w(x))`` with ``F`` a Gauss 2F1 and
``K`` a product of powers of the region variable. ``phi'`` uses the exact
2F1 derivative. ``chi`` is not formed as ``((E - V) phi + i phi')/m``
because near ``x = 0`` the mass is ``~ m0 exp(-aL)`` and that quotient
cancels catastrophically; instead the combination is simplified
analytically per region so that only ``1/m0`` appears.

Region variables:

* scattering, left:  ``y = -exp(-a(x+L))`` (so ``1 - y = 1 + exp(-a(x+L))``)
* scattering, right: ``z = 1/(1 + exp(a(x-L)))``
* bound, left:       ``y = 1/(1 + exp(-a(x+L)))``
* bound, right:      ``z = 1/(1 + exp(a(x-L)))``
"""
import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import expit, log_expit

from . import boundstates, model, scattering
from .errors import DomainError, TailError
from .specfun import hyp2f1, hyp2f1_deriv

TAIL_TOL = 1e-12
QUAD_TOL = 1e-8
MAX_DOUBLINGS = 4


def _f_and_df(a, b, c, w, wc):
    return hyp2f1(a, b, c, w, wc), hyp2f1_deriv(a, b, c, w, wc)


@dataclass
class Region:
    """``phi``, ``phi'`` and ``chi`` on a set of points in one region."""

    x: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    chi: np.ndarray


# ---------------------------------------------------------------- scattering


@dataclass
class ScatteringState:
    """Scattering solution with transmitted amplitude ``d1 = 1``."""

    E: float
    params: model.PhysParams
    result: scattering.ScatteringResult

    @classmethod
    def solve(cls, E, p):
        return cls(float(E), p, scattering.scatter(E, p))

    @property
    def exps(self):
        return self.result.exps

    def left(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        p, E = self.params, self.E
        mu, nu, lam = self.exps.mu, self.exps.nu, self.exps.lam
        a, W, m0 = p.a, p.W, p.m0
        t = -a * (x + p.L)
        my = np.exp(t)  # -y
        y = -my
        yc = np.logaddexp(0.0, t)  # log(1 - y)
        omy = np.exp(yc)  # 1 - y
        pre_l = np.exp(-lam * yc)
        ph_p = cmath.exp(1j * math.pi * mu)
        ph_m = cmath.exp(-1j * math.pi * mu)

        # D1 branch, y^mu with y^mu = e^{i pi mu} (-y)^mu
        F1, dF1 = _f_and_df(mu - nu - lam, mu + nu - lam, 2 * mu, y, omy)
        k1 = self.result.D1 * ph_p * np.exp(mu * t) * pre_l
        phi1 = k1 * F1
        dphi1 = -a * k1 * (mu * F1 + lam * y / omy * F1 + y * dF1)
        chi1 = k1 * ((W + 1j * a * lam) * F1 + 1j * a * omy * dF1) / m0

        # D2 branch, y^{1-mu} = -e^{-i pi mu} (-y)^{1-mu}
        s = 1.0 - mu
        F2, dF2 = _f_and_df(1 - mu - nu - lam, 1 - mu + nu - lam, 2 - 2 * mu, y, omy)
        k2 = self.result.D2 * (-ph_m) * np.exp(s * t) * pre_l
        phi2 = k2 * F2
        dphi2 = -a * k2 * (s * F2 + lam * y / omy * F2 + y * dF2)
        # y^{-mu} (1-y)^{1-lam} form; y^{-mu} = e^{-i pi mu} (-y)^{-mu}
        k2c = self.result.D2 * ph_m * np.exp(-mu * t) * pre_l * omy
        q = 2 * E - W - W / omy - 1j * a - 1j * a * lam * y / omy
        chi2 = -k2c * (q * F2 - 1j * a * y * dF2) / m0
        return Region(x, phi1 + phi2, dphi1 + dphi2, chi1 + chi2)

    def right(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        p, E = self.params, self.E
        mu, nu, lam, k = self.exps.mu, self.exps.nu, self.exps.lam, self.exps.k
        a, m0 = p.a, p.m0
        t = a * (x - p.L)
        lz = log_expit(-t)  # log z
        lzc = log_expit(t)  # log(1 - z)
        z, zc = expit(-t), expit(t)
        F, dF = _f_and_df(-mu - nu - lam, -mu - nu + lam, 1 - 2 * nu, z, zc)
        K = self.result.d1 * np.exp(-nu * lz - mu * lzc)
        phi = K * F
        dphi = -a * K * (-nu * zc * F + mu * z * F + z * zc * dF)
        chi = K * ((E - k) * F - 1j * a * z * dF) / m0
        return Region(x, phi, dphi, chi)


# ---------------------------------------------------------------- bound


@dataclass
class BoundState:
    """Bound state at an eigenvalue; ``amplitude`` is the real ``A'`` and
    ``phase`` a unit global factor."""

    E: float
    params: model.PhysParams
    ratio: complex
    amplitude: float = 1.0
    phase: complex = 1.0

    @classmethod
    def solve(cls, E, p):
        return cls(float(E), p, boundstates.coefficient_ratio(E, p))

    @property
    def exps(self):
        return model.bound_exponents(self.E, self.params)

    def left(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        p, E = self.params, self.E
        bx = self.exps
        eps, nu, lam = bx.epsilon, bx.nu, bx.lam
        a, m0 = p.a, p.m0
        kappa = a * nu
        t = a * (x + p.L)
        y, yc = expit(t), expit(-t)
        F, dF = _f_and_df(eps + nu + lam, eps + nu - lam, 1 + 2 * nu, y, yc)
        K = self.amplitude * self.phase * np.exp(nu * log_expit(t) + eps * log_expit(-t))
        phi = K * F
        dphi = a * K * (nu * yc * F - eps * y * F + y * yc * dF)
        chi = K * ((E + 1j * kappa) * F + 1j * a * y * dF) / m0
        return Region(x, phi, dphi, chi)

    def right(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        p, E = self.params, self.E
        bx = self.exps
        eps, nu, lam = bx.epsilon, bx.nu, bx.lam
        a, m0 = p.a, p.m0
        kappa = a * nu
        t = a * (x - p.L)
        z, zc = expit(-t), expit(t)
        F, dF = _f_and_df(-eps + nu + lam, -eps + nu - lam, 1 + 2 * nu, z, zc)
        K = self.amplitude * self.phase * self.ratio * np.exp(nu * log_expit(-t) - eps * log_expit(t))
        phi = K * F
        dphi = -a * K * (nu * zc * F + eps * z * F + z * zc * dF)
        chi = K * ((E - 1j * kappa) * F - 1j * a * z * dF) / m0
        return Region(x, phi, dphi, chi)


# ---------------------------------------------------------------- common


def _evaluate(state, x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    phi = np.empty(x.shape, dtype=complex)
    dphi = np.empty_like(phi)
    chi = np.empty_like(phi)
    neg = x < 0
    for mask, branch in ((neg, state.left), (~neg, state.right)):
        if mask.any():
            r = branch(x[mask])
            phi[mask], dphi[mask], chi[mask] = r.phi, r.dphi, r.chi
    return Region(x, phi, dphi, chi)


def phi_left(x, state):
    """``phi`` from the left-region solution (meant for ``x <= 0``)."""
    r = state.left(x)
    return r.phi if np.ndim(x) else complex(r.phi[0])


def phi_right(x, state):
    """``phi`` from the right-region solution (meant for ``x >= 0``)."""
    r = state.right(x)
    return r.phi if np.ndim(x) else complex(r.phi[0])


def chi_from_phi(x, phi, phi_prime, E, p, sign=model.BARRIER):
    """``chi = ((E - V) phi + i phi') / m``; loses digits where ``m << m0``."""
    return ((E - model.potential(x, p, sign)) * phi + 1j * phi_prime) / model.mass(x, p)


def spinor_components(x, phi, phi_prime, E, p, sign=model.BARRIER):
    """``(u1, u2)`` from ``phi`` and ``phi'``.

    ``u1 = ((1 + (E-V)/m) phi + (i/m) phi') / 2`` and
    ``u2 = -(i/2) ((1 - (E-V)/m) phi - (i/m) phi')``.
    """
    m = model.mass(x, p)
    ev = (E - model.potential(x, p, sign)) / m
    u1 = 0.5 * ((1 + ev) * phi + 1j / m * phi_prime)
    u2 = -0.5j * ((1 - ev) * phi - 1j / m * phi_prime)
    return u1, u2


def components_from_chi(phi, chi):
    """``u1 = (phi + chi)/2``, ``u2 = (phi - chi)/(2i)``."""
    return 0.5 * (phi + chi), (phi - chi) / 2j


@dataclass
class SpinorSamples:
    """Spinor table on a grid; one row per ``x``."""

    x: np.ndarray
    u1: np.ndarray
    u2: np.ndarray
    phi: np.ndarray
    chi: np.ndarray

    @property
    def density(self):
        return np.abs(self.u1) ** 2 + np.abs(self.u2) ** 2

    @property
    def current(self):
        """``J = i (u1* u2 - u2* u1)``."""
        return (1j * (np.conj(self.u1) * self.u2 - np.conj(self.u2) * self.u1)).real

    @property
    def current_phi_chi(self):
        """``J = (|phi|^2 - |chi|^2)/2``."""
        return 0.5 * (np.abs(self.phi) ** 2 - np.abs(self.chi) ** 2)

    def __len__(self):
        return len(self.x)

    def rows(self):
        return zip(self.x, self.u1, self.u2, self.phi, self.chi, self.density, self.current)


def sample(state, x):
    """Spinor samples of a scattering or bound state on ``x``."""
    r = _evaluate(state, x)
    u1, u2 = components_from_chi(r.phi, r.chi)
    return SpinorSamples(r.x, u1, u2, r.phi, r.chi)


def matching_gap(state):
    """Relative jumps of ``(u1, u2)`` across ``x = 0``.

    Each jump is divided by the local amplitude ``sqrt(|u1|^2 + |u2|^2)``.
    """
    l, r = state.left(0.0), state.right(0.0)
    ul = components_from_chi(l.phi[0], l.chi[0])
    ur = components_from_chi(r.phi[0], r.chi[0])
    amp = math.sqrt(abs(ur[0]) ** 2 + abs(ur[1]) ** 2)
    return abs(ul[0] - ur[0]) / amp, abs(ul[1] - ur[1]) / amp


# ---------------------------------------------------------------- normalisation


def default_extent(E, p):
    """``x_max = L + max(12/a, ln(1e14)/(2 kappa))``."""
    kappa = math.sqrt(max(p.m0 * p.m0 - E * E, 0.0))
    if kappa == 0.0:
        raise DomainError("threshold state: no exponential decay")
    return p.L + max(12.0 / p.a, math.log(1e14) / (2.0 * kappa))


def _grid(x_max, p, n=None):
    if n is None:
        n = int(math.ceil(2 * x_max * p.a / 0.05)) + 1
        n = max(n, 4001)
    if n % 2 == 0:
        n += 1
    return np.linspace(-x_max, x_max, n)


def _norm_integral(state, x_max, n=None):
    """Simpson integral of the density and its grid-doubling error estimate."""
    p = state.params
    xs = _grid(x_max, p, n)
    for _ in range(MAX_DOUBLINGS):
        rho = sample(state, xs).density
        fine = simpson(rho, x=xs)
        coarse = simpson(rho[::2], x=xs[::2])
        err = abs(fine - coarse) / abs(fine)
        if err < QUAD_TOL:
            return fine, err, xs, rho
        xs = np.linspace(-x_max, x_max, 2 * len(xs) - 1)
    return fine, err, xs, rho


def normalize_bound(E, p, x_max=None, n=None):
    """Normalised :class:`BoundState` at eigenvalue ``E``.

    ``A'`` is real and positive with unit total density (composite Simpson);
    the global phase makes the larger of ``u1(0)``, ``u2(0)`` real and
    positive (one of them vanishes by parity up to rounding). Attributes ``norm_error`` and ``x_max`` record the grid.

    Raises
    ------
    TailError
        The density at ``+-x_max`` exceeds ``1e-12`` of its peak.
    NotAnEigenvalue
        ``|F(E)|`` is not small.
    """
    state = BoundState.solve(E, p)
    x_max = default_extent(E, p) if x_max is None else float(x_max)
    edge = sample(state, [-x_max, x_max]).density
    total, err, xs, rho = _norm_integral(state, x_max, n)
    if edge.max() > TAIL_TOL * rho.max():
        raise TailError(
            f"density at |x| = {x_max:g} is {edge.max() / rho.max():.2e} of the peak; enlarge x_max"
        )
    state.amplitude = 1.0 / math.sqrt(total)
    s0 = sample(state, 0.0)
    ref = s0.u1[0] if abs(s0.u1[0]) >= abs(s0.u2[0]) else s0.u2[0]
    state.phase = abs(ref) / ref
    state.norm_error = err
    state.x_max = x_max
    return state


def region_probability(state, x1, x2, n=None):
    """``int_{x1}^{x2} density dx`` for a normalised bound state."""
    x1, x2 = float(x1), float(x2)
    if x2 <= x1:
        return 0.0
    p = state.params
    if n is None:
        n = max(2001, int(math.ceil((x2 - x1) * p.a / 0.02)) + 1)
    n += (n + 1) % 2
    xs = np.linspace(x1, x2, n)
    return float(simpson(sample(state, xs).density, x=xs))


def outside_inside(state, half_width=None):
    """``(P(|x| > w), P(|x| <= w))`` with ``w = L`` by default."""
    w = state.params.L if half_width is None else half_width
    x_max = getattr(state, "x_max", default_extent(state.E, state.params))
    inside = region_probability(state, -w, w)
    outside = region_probability(state, -x_max, -w) + region_probability(state, w, x_max)
    return outside, inside
