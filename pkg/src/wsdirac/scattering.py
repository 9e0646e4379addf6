"""Closed-form transmission and reflection through the Woods-Saxon barrier.

The left region holds an incident plus reflected wave and the right region
only the transmitted wave ``phi_R -> d1 exp(ik(x-L))`` with ``d1 = 1``.
Matching the two hypergeometric solutions at ``x = 0`` (to relative
accuracy ``O(exp(-aL))``) gives ``D1, D2`` and then the asymptotic
amplitudes ``G`` (reflected) and ``H`` (incident).
"""
import cmath
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import model
from .errors import DomainError, PoleError, SingularEnergy
from .specfun import gamma_ratio

log = logging.getLogger(__name__)

COEFFICIENT_NAMES = ("A", "B", "C", "D", "M", "N")


def _gamma_args(mu, nu, lam):
    return {
        "A": ([2 * mu, 2 * nu], [mu + nu - lam, mu + nu + lam]),
        "B": ([2 * mu, -2 * nu], [mu - nu - lam, mu - nu + lam]),
        "C": ([2 - 2 * mu, 2 * nu], [1 - mu + nu - lam, 1 - mu + nu + lam]),
        "D": ([2 - 2 * mu, -2 * nu], [1 - mu - nu - lam, 1 - mu - nu + lam]),
        "M": ([1 - 2 * nu, 1 + 2 * mu], [1 + mu - nu + lam, 1 + mu - nu - lam]),
        "N": ([1 - 2 * nu, -1 - 2 * mu], [-mu - nu - lam, -mu - nu + lam]),
    }


def asymptotic_coefficients(exps):
    """Gamma-ratio coefficients ``(A, B, C, D, M, N)`` for an :class:`ExponentSet`.

    ``A..D`` connect the left solutions to the plane waves at ``x -> -inf``;
    ``M, N`` connect the right solution to the ``z -> 1`` side.
    """
    out = []
    for name, (num, den) in _gamma_args(exps.mu, exps.nu, exps.lam).items():
        try:
            out.append(gamma_ratio(num, den))
        except PoleError as exc:
            raise SingularEnergy(f"coefficient {name}: {exc}", coefficient=name) from exc
    return tuple(out)


def _phase(z):
    # exp(z) for the purely imaginary exponents that appear here
    return cmath.exp(z)


def match_constants(coeffs, exps, p):
    """``(D1, D2, G, H)`` with ``d1 = 1``."""
    A, B, C, D, M, N = coeffs
    mu = exps.mu
    aL = p.a * p.L
    e_plus = _phase(1j * math.pi * mu)
    e_minus = _phase(-1j * math.pi * mu)
    w = 1.0 - 2.0 * mu
    D1 = e_minus / w * (M * w * _phase(2 * mu * aL) + 2.0 * N * math.exp(-aL))
    D2 = e_plus / w * (N * (2.0 * mu + 1.0) * _phase(-2 * mu * aL))
    G = D1 * A * e_plus - D2 * C * e_minus
    H = D1 * B * e_plus - D2 * D * e_minus
    return D1, D2, G, H


@dataclass(frozen=True)
class ScatteringResult:
    E: float
    params: model.PhysParams
    exps: model.ExponentSet
    A: complex
    B: complex
    C: complex
    D: complex
    M: complex
    N: complex
    D1: complex
    D2: complex
    G: complex
    H: complex
    d1: complex = 1.0
    T: float = field(default=float("nan"))
    R: float = field(default=float("nan"))

    @property
    def unitarity_residual(self):
        return self.R + self.T - 1.0


def scatter(E, p):
    """Full closed-form solution of the barrier problem at energy ``E``."""
    E = float(E)
    if abs(E) <= p.m0:
        raise DomainError(f"|E| = {abs(E)} <= m0: no propagating states")
    exps = model.scattering_exponents(E, p)
    coeffs = asymptotic_coefficients(exps)
    D1, D2, G, H = match_constants(coeffs, exps, p)
    k = exps.k.real
    h2 = abs(H) ** 2
    T = 1.0 / h2
    R = (E + k) / (E - k) * abs(G) ** 2 / h2
    return ScatteringResult(E, p, exps, *coeffs, D1, D2, G, H, T=T, R=R)


def transmission(E, p):
    """Transmission coefficient ``T = |d1|^2 / |H|^2`` of the barrier."""
    return scatter(E, p).T


def reflection(E, p):
    """Reflection coefficient ``R = (E+k)/(E-k) |G|^2/|H|^2``."""
    return scatter(E, p).R


def klein_range(p):
    """Energy window ``(m0, W - m0)``; empty unless ``W > 2 m0``."""
    if p.W <= 2.0 * p.m0:
        raise DomainError(f"no Klein range: W = {p.W} <= 2 m0 = {2 * p.m0}")
    return p.m0, p.W - p.m0


@dataclass
class SweepTable:
    """Rows ``(abscissa, T, R, R + T - 1)`` of a transmission sweep."""

    kind: str
    abscissa: np.ndarray
    T: np.ndarray
    R: np.ndarray
    skipped: list = field(default_factory=list)
    label: str = ""

    @property
    def residual(self):
        return self.R + self.T - 1.0

    def __len__(self):
        return len(self.abscissa)

    def rows(self):
        return list(zip(self.abscissa, self.T, self.R, self.residual))


def _clip_guard(values, bad, guard):
    # push grid points sitting inside a singular band out to its edge
    values = np.array(values, dtype=float)
    for b in bad:
        near = np.abs(values - b) <= guard
        values[near] = np.where(values[near] >= b, b + 2 * guard, b - 2 * guard)
    return values


def _row(E, p, mass_mode, oracle_options):
    if mass_mode == "pdm":
        res = scatter(E, p)
        return res.T, res.R
    if mass_mode == "constant":
        from . import oracle

        prof = oracle.woods_saxon_profile(p, model.BARRIER, "constant", **(oracle_options or {}))
        res = oracle.oracle_scattering(E, prof)
        return res.T, res.R
    raise ValueError(f"mass_mode must be 'pdm' or 'constant', got {mass_mode!r}")


def _sweep(kind, grid, make, mass_mode, oracle_options, label):
    xs, ts, rs, skipped = [], [], [], []
    for v in grid:
        E, q = make(v)
        try:
            t, r = _row(E, q, mass_mode, oracle_options)
        except (SingularEnergy, DomainError) as exc:
            log.info("skipping %s = %.17g: %s", kind, v, exc)
            skipped.append((float(v), str(exc)))
            continue
        xs.append(float(v))
        ts.append(t)
        rs.append(r)
    return SweepTable(kind, np.array(xs), np.array(ts), np.array(rs), skipped, label)


def energy_sweep(energies, p, mass_mode="pdm", oracle_options=None):
    """``T(E)`` at fixed barrier ``p``."""
    grid = np.sort(np.asarray(energies, dtype=float))
    grid = _clip_guard(grid, (p.W, p.m0, -p.m0), p.guard)
    try:
        lo, hi = klein_range(p)
        inside = grid.size == 0 or (grid[0] > lo and grid[-1] < hi)
        label = "klein range" if inside else "outside klein range"
    except DomainError:
        label = "no klein range"
    return _sweep("E", grid, lambda E: (E, p), mass_mode, oracle_options, label)


def height_sweep(E, heights, p, mass_mode="pdm", oracle_options=None):
    """``T(W)`` at fixed energy ``E``; ``p.W`` is ignored."""
    E = float(E)
    grid = np.sort(np.asarray(heights, dtype=float))
    grid = _clip_guard(grid, (E,), model.GUARD * max(1.0, abs(E)))
    return _sweep(
        "W", grid, lambda w: (E, p.replace(W=float(w))), mass_mode, oracle_options, f"E = {E:g}"
    )


def transmission_sweep(kind, values, p, mass_mode="pdm", E=None, oracle_options=None):
    """Tabulate ``T``, ``R`` and ``R + T - 1`` on a grid.

    ``kind='e'`` sweeps the energy at fixed ``p``; ``kind='w'`` sweeps the
    barrier height at fixed ``E``. ``mass_mode='constant'`` runs the
    constant-mass barrier through the numerical oracle. Rows come back in
    ascending abscissa; singular or sub-threshold points are skipped and
    logged.
    """
    if kind == "e":
        return energy_sweep(values, p, mass_mode, oracle_options)
    if kind == "w":
        if E is None:
            raise ValueError("a barrier-height sweep needs the energy E")
        return height_sweep(E, values, p, mass_mode, oracle_options)
    raise ValueError(f"kind must be 'e' or 'w', got {kind!r}")
