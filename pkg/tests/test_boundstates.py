import mpmath
import numpy as np
import pytest

from wsdirac import boundstates, model, oracle
from wsdirac.errors import DomainError, NotAnEigenvalue

WELL = model.PhysParams(W=2.0, a=10.0, L=2.0, m0=1.0)
WELL_PDM = [-0.633251, -0.00806737, 0.605869]


@pytest.fixture(scope="module")
def well_spectrum():
    return boundstates.spectrum(WELL)


def mp_f(E, p):
    # independent high-precision transcription of F(E)
    mpmath.mp.dps = 30
    nu = mpmath.sqrt(p.m0**2 - mpmath.mpf(E) ** 2) / p.a
    eps = -1j * (E + p.W) / p.a
    lam = 1j * mpmath.sqrt(mpmath.mpf(p.W**2 - p.m0**2)) / p.a
    g = mpmath.gamma
    S = g(1 + 2 * nu) * g(1 - 2 * eps) / (g(1 - eps + nu - lam) * g(1 - eps + nu + lam))
    T = g(1 + 2 * nu) * g(-1 + 2 * eps) / (g(eps + nu + lam) * g(eps + nu - lam))
    U = g(1 + 2 * nu) * g(1 + 2 * eps) / (g(1 + eps + nu + lam) * g(1 + eps + nu - lam))
    V = g(1 + 2 * nu) * g(-1 - 2 * eps) / (g(-eps + nu + lam) * g(-eps + nu - lam))
    return complex(S * V / (T * U) - mpmath.exp(4 * eps * p.a * p.L) * (2 * eps - 1) / (2 * eps + 1))


@pytest.mark.parametrize("E", [-0.9, -0.633251, -0.3, 0.1, 0.605869, 0.95])
def test_f_eigen_matches_mpmath(E):
    assert abs(boundstates.f_eigen(E, WELL) - mp_f(E, WELL)) < 1e-11


@pytest.mark.parametrize("E", [-0.633251, 0.605869])
def test_f_eigen_small_at_table_values(E):
    assert abs(boundstates.f_eigen(E, WELL)) < 1e-4


def test_well_spectrum(well_spectrum):
    sp = well_spectrum
    assert [ev.kind for ev in sp] == ["regular"] * 3
    assert np.allclose(sp.energies, WELL_PDM, atol=1e-4, rtol=0)
    assert all(ev.residual < 1e-8 for ev in sp)
    assert sp.energies == sorted(sp.energies)
    assert sp.grid_meta["rejected"] == [] and sp.grid_meta["unresolved"] == []


def test_midpoints_are_not_roots(well_spectrum):
    es = well_spectrum.energies
    for lo, hi in zip(es[:-1], es[1:]):
        assert abs(boundstates.f_eigen(0.5 * (lo + hi), WELL)) > 1e-2


def test_dense_scan_finds_no_extra_roots(well_spectrum):
    dense = boundstates.spectrum(WELL, n_grid=8000)
    assert len(dense) == 3
    assert np.max(np.abs(np.array(dense.energies) - well_spectrum.energies)) <= 1e-10


def test_stability_under_grid_doubling(well_spectrum):
    doubled = boundstates.spectrum(WELL, n_grid=4000)
    assert np.max(np.abs(np.array(doubled.energies) - well_spectrum.energies)) <= 1e-10


def test_shallow_well_confinement():
    p = model.PhysParams(W=0.5, a=10.0, L=2.0, m0=1.0)
    sp = boundstates.spectrum(p)
    assert len(sp) >= 1
    assert all(-0.5 < E < 1.0 for E in sp.energies)


def test_spectrum_validates_grid():
    with pytest.raises(ValueError):
        boundstates.spectrum(WELL, n_grid=100)


def test_spectrum_agrees_with_oracle(well_spectrum):
    shoot = oracle.spectrum_for(WELL, oracle.PDM, n_grid=400)
    assert np.max(np.abs(np.array(shoot.energies) - well_spectrum.energies)) < 1e-6


def test_coefficient_ratio_forms_agree(well_spectrum):
    for E in well_spectrum.energies:
        first, second = boundstates.coefficient_ratio_forms(E, WELL)
        assert abs(first - second) < 1e-8 * abs(second)
        r = boundstates.coefficient_ratio(E, WELL)
        assert np.isfinite(r) and abs(r) > 0


def test_coefficient_ratio_requires_eigenvalue():
    with pytest.raises(NotAnEigenvalue):
        boundstates.coefficient_ratio(0.3, WELL)


def test_f_eigen_domain():
    with pytest.raises(DomainError):
        boundstates.f_eigen(-1.2, WELL)


def test_fewer_states_than_constant_mass(well_spectrum):
    const = oracle.spectrum_for(WELL, oracle.CONSTANT, n_grid=400)
    assert len(well_spectrum.regular()) == 3
    assert len(const.regular()) == 4
