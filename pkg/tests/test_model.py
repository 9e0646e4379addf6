import math
import warnings

import numpy as np
import pytest

from wsdirac import model
from wsdirac.errors import DomainError, ShapeWarning, SingularEnergy

P = model.PhysParams(W=1.2, a=5.0, L=10.0, m0=0.4)


def test_params_validation():
    with pytest.raises(ValueError):
        model.PhysParams(W=1, a=0, L=1, m0=1)
    with pytest.raises(ValueError):
        model.PhysParams(W=1, a=10, L=2, m0=-1)
    with pytest.raises(ValueError):
        model.PhysParams(W=float("nan"), a=10, L=2, m0=1)
    with pytest.warns(ShapeWarning):
        model.PhysParams(W=1, a=1, L=2, m0=1)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        model.PhysParams(W=1, a=10, L=0.5, m0=1)  # aL = 5 is fine


def test_potential_examples():
    assert model.potential(-1e3, P) == 0.0
    assert model.potential(-P.L, P) == pytest.approx(P.W / 2)
    q = model.PhysParams(W=1, a=10, L=2, m0=1)
    assert model.potential(0.0, q) == pytest.approx(1 / (math.exp(-20) + 1), rel=1e-15)
    assert 1 - model.potential(0.0, q) == pytest.approx(2.06e-9, rel=1e-2)
    assert model.potential(0.3, P, model.WELL) == -model.potential(0.3, P)
    with pytest.raises(ValueError):
        model.potential(0.0, P, "hill")


def test_mass_examples():
    assert model.mass(0.0, P) == pytest.approx(P.m0 * math.exp(-50) / (math.exp(-50) + 1), rel=1e-12)
    assert model.mass(1e3, P) == P.m0
    assert model.mass(-P.L, P) == pytest.approx(P.m0 / 2)


xs = np.linspace(-40, 40, 4001)


def test_continuity_at_origin():
    d = 1e-8
    for f in (lambda x: model.potential(x, P), lambda x: model.mass(x, P)):
        assert abs(f(-d) - f(d)) < 1e-7 * max(P.W, P.m0)


def test_mass_is_m0_minus_gamma_v():
    lhs = model.mass(xs, P)
    rhs = P.m0 - (P.m0 / P.W) * model.potential(xs, P)
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_mass_even_and_bounded():
    m = model.mass(xs, P)
    assert np.array_equal(m, model.mass(-xs, P))
    # beyond |x| ~ L + 36/a, m0 * expit rounds to m0 itself
    fin = model.mass(np.linspace(-P.L - 30 / P.a, P.L + 30 / P.a, 1001), P)
    assert np.all(fin > 0) and np.all(fin < P.m0)


def test_scattering_exponents():
    e = model.scattering_exponents(2 * P.m0, P)
    assert e.k == pytest.approx(math.sqrt(0.48))
    assert e.nu == pytest.approx(1j * math.sqrt(0.48) / 5)
    assert e.mu.real == 0
    assert e.lam.real == 0 and e.lam.imag > 0
    assert abs(e.nu**2 + (0.64 - 0.16) / 25) < 1e-15
    assert model.lambda_exponent(P.replace(W=P.m0)) == 0
    low = model.lambda_exponent(P.replace(W=0.2))
    assert low.imag == 0 and low.real != 0


def test_scattering_exponents_singular():
    q = model.PhysParams(W=2, a=10, L=2, m0=1)
    with pytest.raises(SingularEnergy):
        model.scattering_exponents(2.0, q)
    with pytest.raises(SingularEnergy):
        model.scattering_exponents(-1.0 + 1e-12, q)


def test_bound_exponents():
    q = model.PhysParams(W=2, a=10, L=2, m0=1)
    assert model.bound_exponents(0.0, q).nu == pytest.approx(0.1)
    b = model.bound_exponents(-0.633251, q)
    assert b.nu.real == pytest.approx(0.0773947, abs=1e-7)
    assert b.epsilon.real == 0
    assert b.sigma == b.nu and b.eta == b.epsilon
    with pytest.raises(SingularEnergy):
        model.bound_exponents(1.0, q)
    with pytest.raises(DomainError):
        model.bound_exponents(-1.5, q)
    with pytest.raises(DomainError):
        model.bound_exponents(-0.6, q.replace(W=0.5))


def test_exponential_phase_unit_modulus():
    q = model.PhysParams(W=2, a=10, L=2, m0=1)
    for E in np.linspace(-0.99, 0.99, 50):
        eps = model.bound_exponents(E, q).epsilon
        assert abs(abs(np.exp(4 * eps * q.a * q.L)) - 1) < 1e-12


@pytest.mark.parametrize("y", [-1.0, -10.0, -math.exp(-50.0), -1e4])
def test_mass_constraint_residual(y):
    assert abs(model.mass_constraint_residual(y, P)) < 1e-6


def test_mass_constraint_domain():
    with pytest.raises(DomainError):
        model.mass_constraint_residual(0.5, P)
