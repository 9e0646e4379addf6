"""Self-check suite behind ``wsdirac validate``.

Each check returns a :class:`Check` holding the worst deviation found and
the tolerance it was held to. ``tolerance_scale`` multiplies every
tolerance, which lets a caller tighten the suite until it fails.
"""
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import boundstates, model, oracle, scattering, wavefunction

WELL_PARAMS = model.PhysParams(W=2.0, a=10.0, L=2.0, m0=1.0)
WELL_PDM = (-0.633251, -0.00806737, 0.605869)
WELL_CONSTANT = (-0.759003, -0.273555, 0.271144, 0.788942)
DEEP_PARAMS = model.PhysParams(W=3.0, a=10.0, L=2.0, m0=1.0)
DEEP_LEVEL = 0.97248
DEEP_OUTSIDE = 0.57
BARRIER_SETS = (
    model.PhysParams(W=1.2, a=5.0, L=10.0, m0=0.4),
    model.PhysParams(W=4.2, a=5.0, L=10.0, m0=0.4),
)


@dataclass
class Check:
    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""
    seconds: float = 0.0


def klein_grid(p, n, inset=1e-3):
    lo, hi = scattering.klein_range(p)
    pad = inset * (hi - lo)
    return np.linspace(lo + pad, hi - pad, n)


def _match(found, expected):
    if len(found) != len(expected):
        return float("inf")
    return float(np.max(np.abs(np.sort(found) - np.asarray(expected))))


def check_well_pdm(scale):
    sp = boundstates.spectrum(WELL_PARAMS)
    found = [ev.E for ev in sp.regular()]
    dev = _match(found, WELL_PDM)
    tol = 1e-4 * scale
    return Check("well_spectrum_pdm", dev, tol, dev < tol, f"eigenvalues {found}")


def check_well_constant(scale):
    sp = oracle.spectrum_for(WELL_PARAMS, oracle.CONSTANT)
    found = [ev.E for ev in sp.regular()]
    dev = _match(found, WELL_CONSTANT)
    tol = 1e-3 * scale
    edge = [ev.E for ev in sp if ev.kind == boundstates.EDGE]
    detail = (
        f"eigenvalues {found}; edge roots {edge}; threshold mismatch "
        f"{sp.grid_meta['edge_mismatch']:.6g} (the E = -m0 edge root is reported, not checked)"
    )
    return Check("well_spectrum_constant", dev, tol, dev < tol, detail)


def check_unitarity(scale, n=200):
    worst = 0.0
    for p in BARRIER_SETS:
        tab = scattering.energy_sweep(klein_grid(p, n), p)
        worst = max(worst, float(np.max(np.abs(tab.residual))))
    tol = 1e-8 * scale
    return Check("unitarity", worst, tol, worst < tol, f"{n} energies per barrier set")


def check_oracle(scale, n=50):
    worst = 0.0
    for p in BARRIER_SETS:
        prof = oracle.woods_saxon_profile(p)
        for E in klein_grid(p, n):
            t_or = oracle.oracle_scattering(E, prof, L=p.L).T
            worst = max(worst, abs(scattering.transmission(E, p) - t_or))
    tol = 1e-6 * scale
    return Check("analytic_vs_oracle_T", worst, tol, worst < tol, f"{n} energies per barrier set")


def check_matching(scale):
    worst = 0.0
    for p in (WELL_PARAMS, DEEP_PARAMS):
        for E in boundstates.spectrum(p).energies:
            worst = max(worst, *wavefunction.matching_gap(wavefunction.BoundState.solve(E, p)))
    for p in BARRIER_SETS:
        for E in klein_grid(p, 5):
            worst = max(worst, *wavefunction.matching_gap(wavefunction.ScatteringState.solve(E, p)))
    tol = 1e-7 * scale
    return Check("matching_at_origin", worst, tol, worst < tol)


def check_deep_state(scale):
    E = boundstates.spectrum(DEEP_PARAMS).energies[-1]
    st = wavefunction.normalize_bound(E, DEEP_PARAMS)
    outside, inside = wavefunction.outside_inside(st)
    dev = max(abs(E - DEEP_LEVEL) / 1e-3, abs(outside - DEEP_OUTSIDE) / 1e-2, abs(inside - (1 - DEEP_OUTSIDE)) / 1e-2)
    tol = 1.0 * scale
    detail = f"E = {E:.8f}, P_outside = {outside:.4f}, P_inside = {inside:.4f} (value is in units of the tolerances)"
    return Check("deep_well_state", dev, tol, dev < tol, detail)


CHECKS = (
    check_well_pdm,
    check_well_constant,
    check_unitarity,
    check_oracle,
    check_matching,
    check_deep_state,
)


def run(tolerance_scale=1.0):
    """Run every check; returns ``(all_passed, [Check, ...])``."""
    out = []
    for fn in CHECKS:
        t0 = time.perf_counter()
        chk = fn(tolerance_scale)
        chk.seconds = time.perf_counter() - t0
        out.append(chk)
    return all(c.passed for c in out), out


def report(tolerance_scale=1.0):
    ok, checks = run(tolerance_scale)
    return {"passed": ok, "tolerance_scale": tolerance_scale, "checks": [asdict(c) for c in checks]}
