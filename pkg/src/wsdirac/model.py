"""Woods-Saxon potential, the matched position-dependent mass, and exponents.

Natural units (hbar = c = 1). The potential is

    V(x) = W / (exp(-a(x+L)) + 1)   for x < 0
    V(x) = W / (exp(a(x-L)) + 1)    for x >= 0

and the mass that keeps the problem hypergeometric is
``m(x) = m0 * (1 - V_barrier(x)/W)``, i.e. ``m0`` asymptotically and
``m0 * exp(-aL) / (exp(-aL) + 1)`` at the origin. The same mass function is
used for the barrier (scattering) and the well (bound states).
"""
import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .errors import DomainError, ShapeWarning, SingularEnergy

BARRIER = "barrier"
WELL = "well"

GUARD = 1e-9


@dataclass(frozen=True)
class PhysParams:
    """Strength ``W``, edge sharpness ``a``, half-width ``L``, asymptotic mass ``m0``."""

    W: float
    a: float
    L: float
    m0: float

    def __post_init__(self):
        for name in ("W", "a", "L", "m0"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v}")
        if self.a <= 0 or self.L <= 0 or self.m0 <= 0:
            raise ValueError("a, L and m0 must be positive")
        if self.a * self.L < 5:
            warnings.warn(
                f"a*L = {self.a * self.L:g} < 5: the x=0 matching assumes a*L >> 1",
                ShapeWarning,
                stacklevel=3,
            )

    @property
    def guard(self):
        """Width of the singular-energy exclusion band."""
        return GUARD * max(1.0, abs(self.W))

    def replace(self, **changes):
        fields = {"W": self.W, "a": self.a, "L": self.L, "m0": self.m0}
        fields.update(changes)
        return PhysParams(**fields)


def _sign(sign):
    if sign == BARRIER:
        return 1.0
    if sign == WELL:
        return -1.0
    raise ValueError(f"sign must be {BARRIER!r} or {WELL!r}, got {sign!r}")


def shape(x, p):
    """Unit-height Woods-Saxon profile; theta(0) = 1 (right branch at x = 0)."""
    x = np.asarray(x, dtype=float)
    out = np.where(x < 0, expit(p.a * (x + p.L)), expit(-p.a * (x - p.L)))
    return out if out.ndim else float(out)


def potential(x, p, sign=BARRIER):
    """V(x) for the barrier (``+W``) or the well (``-W``)."""
    return _sign(sign) * p.W * shape(x, p)


def mass(x, p):
    """Position-dependent mass; even in ``x`` and strictly inside ``(0, m0)``."""
    x = np.asarray(x, dtype=float)
    out = p.m0 * np.where(x < 0, expit(-p.a * (x + p.L)), expit(p.a * (x - p.L)))
    return out if out.ndim else float(out)


def constant_mass(x, p):
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, p.m0)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ExponentSet:
    """Scattering exponents; ``lam`` stands for lambda."""

    mu: complex
    nu: complex
    lam: complex
    k: complex


@dataclass(frozen=True)
class BoundExponentSet:
    """Bound-state exponents for the well (``W -> -W``)."""

    epsilon: complex
    nu: complex
    lam: complex

    # the other exponents of the bound problem coincide with these
    @property
    def sigma(self):
        return self.nu

    @property
    def tau(self):
        return self.nu

    @property
    def eta(self):
        return self.epsilon

    @property
    def kappa(self):
        """Decay rate ``a * nu`` of the bound tails."""
        return self.nu


def lambda_exponent(p):
    """``i * sqrt((W^2 - m0^2) / a^2)``: imaginary for W > m0, real for W < m0."""
    return 1j * cmath.sqrt(p.W * p.W - p.m0 * p.m0) / p.a


def scattering_exponents(E, p):
    """Exponents of the barrier problem at energy ``E``.

    ``k = +sqrt(E^2 - m0^2)`` for ``|E| > m0`` (right-moving transmitted
    wave); below threshold ``k`` is the principal complex root.
    """
    E = float(E)
    g = p.guard
    if abs(abs(E) - p.m0) <= g:
        raise SingularEnergy(f"E = {E} at the threshold |E| = m0", energy=E)
    if abs(E - p.W) <= g:
        raise SingularEnergy(f"E = {E} equals W (Gamma(2 mu) pole)", energy=E)
    k = cmath.sqrt(E * E - p.m0 * p.m0)
    return ExponentSet(
        mu=-1j * (E - p.W) / p.a,
        nu=1j * k / p.a,
        lam=lambda_exponent(p),
        k=k,
    )


def bound_window(p):
    """Open energy interval that can hold bound states of the well."""
    return max(-p.W, -p.m0), p.m0


def bound_exponents(E, p):
    """Exponents of the well problem; ``nu`` is real and positive.

    Raises ``SingularEnergy`` at ``E = +-m0`` and ``DomainError`` outside
    ``(max(-W, -m0), m0)``; below ``-m0`` the lower continuum starts and
    ``nu`` would be imaginary.
    """
    E = float(E)
    if abs(abs(E) - p.m0) <= p.guard:
        raise SingularEnergy(f"E = {E} at the threshold |E| = m0", energy=E)
    lo, hi = bound_window(p)
    if not lo < E < hi:
        raise DomainError(f"E = {E} outside the bound-state window ({lo}, {hi})")
    return BoundExponentSet(
        epsilon=-1j * (E + p.W) / p.a,
        nu=complex(math.sqrt(p.m0 * p.m0 - E * E) / p.a),
        lam=lambda_exponent(p),
    )


def mass_of_y(y, m0):
    """Left-region mass in the variable ``y = -exp(-a(x+L))``."""
    return m0 * y / (y - 1.0)


def mass_constraint_residual(y, p, h=None):
    """Residual of ``-(dm/dy)/m * y(1-y) = alpha + beta*y`` with alpha=-1, beta=0.

    ``dm/dy`` is a central difference, so the residual is pure
    discretisation error.
    """
    y = float(y)
    if y >= 0:
        raise DomainError("the left-region variable y is negative")
    h = 1e-6 * max(1.0, abs(y)) if h is None else h
    h = min(h, 0.5 * abs(y))
    m = mass_of_y(y, p.m0)
    dm = (mass_of_y(y + h, p.m0) - mass_of_y(y - h, p.m0)) / (2.0 * h)
    return -dm / m * y * (1.0 - y) - (-1.0)
