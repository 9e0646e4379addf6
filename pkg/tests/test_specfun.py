import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wsdirac.errors import DegenerateError, PoleError
from wsdirac.specfun import gamma_ratio, hyp2f1, hyp2f1_deriv, is_gamma_pole, log_gamma

finite = dict(allow_nan=False, allow_infinity=False)


def mp_loggamma(z):
    return complex(mpmath.loggamma(mpmath.mpc(z.real, z.imag)))


def mp_hyp2f1(a, b, c, x):
    return complex(mpmath.hyp2f1(a, b, c, x))


# ------------------------------------------------------------------ log_gamma


def test_log_gamma_trivial_values():
    assert abs(log_gamma(1)) < 1e-15
    assert abs(log_gamma(5) - math.log(24)) < 1e-13
    assert log_gamma(5).imag == pytest.approx(0.0, abs=1e-15)


def test_log_gamma_one_plus_i_reflection():
    # |Gamma(1+i)|^2 = pi / sinh(pi)
    v = math.exp(2 * log_gamma(1 + 1j).real)
    assert v == pytest.approx(math.pi / math.sinh(math.pi), rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(st.floats(-30, 30, **finite), st.floats(-30, 30, **finite))
def test_log_gamma_matches_mpmath(re, im):
    z = complex(re, im)
    if abs(z) > 50 or min(abs(z - n) for n in range(-31, 1)) < 1e-3:
        return
    got = log_gamma(z)
    ref = mp_loggamma(z)
    # compare Gamma itself (log only defined mod 2 pi i left of 1/2)
    diff = got - ref
    diff = complex(diff.real, (diff.imag + math.pi) % (2 * math.pi) - math.pi)
    assert abs(diff) <= 1e-12 * max(1.0, abs(ref))


def test_log_gamma_principal_branch_right_half_plane():
    for z in (0.5 + 20j, 3 - 40j, 10 + 0.1j, 0.7 + 1e-3j):
        assert abs(log_gamma(z) - mp_loggamma(z)) <= 1e-12 * max(1, abs(mp_loggamma(z)))


@settings(max_examples=100, deadline=None)
@given(st.floats(-10, 10, **finite), st.floats(-10, 10, **finite))
def test_log_gamma_recurrence(re, im):
    z = complex(re, im)
    if min(abs(z - n) for n in range(-11, 1)) < 1e-3:
        return
    r = log_gamma(z + 1) - log_gamma(z) - cmath.log(z)
    r = complex(r.real, (r.imag + math.pi) % (2 * math.pi) - math.pi)
    assert abs(r) < 1e-11


@pytest.mark.parametrize("z", [0, -1, -7, -3 + 1e-13])
def test_log_gamma_pole(z):
    with pytest.raises(PoleError):
        log_gamma(z)


def test_is_gamma_pole():
    assert is_gamma_pole(-2 + 0j)
    assert not is_gamma_pole(-2 + 1e-6j)
    assert not is_gamma_pole(2)


# ------------------------------------------------------------------ gamma_ratio


def test_gamma_ratio_trivial():
    assert gamma_ratio([2], [1, 1]) == pytest.approx(1, abs=1e-14)
    z = 0.5 + 2j
    assert abs(gamma_ratio([z + 1], [z]) - z) < 1e-13


def test_gamma_ratio_duplication():
    # Gamma(2 mu) = 2^{2 mu - 1} pi^{-1/2} Gamma(mu) Gamma(mu + 1/2)
    mu = 0.3 + 0.7j
    got = gamma_ratio([2 * mu], [mu, mu])
    ref = 2 ** (2 * mu - 1) / math.sqrt(math.pi) * complex(mpmath.gamma(mu + 0.5) / mpmath.gamma(mu))
    assert abs(got - ref) < 1e-12 * abs(ref)


def test_gamma_ratio_large_imaginary_no_overflow():
    num = [1 + 100j, 1 - 100j]
    den = [2 + 100j, 2 - 100j]
    ref = 1 / abs(1 + 100j) ** 2
    assert abs(gamma_ratio(num, den) - ref) < 1e-12 * ref


def test_gamma_ratio_denominator_pole_is_zero():
    assert gamma_ratio([1.5], [-3]) == 0


def test_gamma_ratio_numerator_pole_raises():
    with pytest.raises(PoleError):
        gamma_ratio([-2], [1])


def test_gamma_ratio_overflow():
    with pytest.raises(OverflowError):
        gamma_ratio([300, 300, 300], [])


# ------------------------------------------------------------------ hyp2f1


def test_hyp2f1_trivial():
    assert hyp2f1(0.3 + 1j, -2 + 0.5j, 1.7 - 0.2j, 0.0) == 1
    a, b = 0.4 - 0.3j, 1.2 + 0.8j
    assert abs(hyp2f1(a, b, b, 0.25) - 0.75 ** (-a)) < 1e-14
    assert hyp2f1(1, 1, 2, 0.5) == pytest.approx(-math.log(0.5) / 0.5, rel=1e-15)


params = st.complex_numbers(max_magnitude=3, **finite)


@settings(max_examples=150, deadline=None)
@given(params, params, params, st.floats(-50, 0.98, **finite))
def test_hyp2f1_matches_mpmath(a, b, c, x):
    if min(abs(c - n) for n in range(-6, 1)) < 0.05:
        return
    s = c - a - b
    if x > 0.5 and abs(s - round(s.real)) < 0.05:
        return
    if x < -0.5 and abs((b - a) - round((b - a).real)) < 0.05:
        return
    ref = mp_hyp2f1(a, b, c, x)
    got = hyp2f1(a, b, c, x)
    scale = max(abs(ref), 1e-3)
    assert abs(got - ref) <= 1e-10 * scale


def test_hyp2f1_complement_argument():
    # x close to 1 from an exact complement
    a, b, c = 0.2 + 0.5j, 0.3 - 0.1j, 1.1 + 0.4j
    xc = math.exp(-20)
    ref = complex(mpmath.hyp2f1(a, b, c, 1 - mpmath.mpf(xc)))
    assert abs(hyp2f1(a, b, c, 1 - xc, xc) - ref) < 1e-10 * abs(ref)


def test_hyp2f1_vectorised():
    xs = np.array([-30.0, -0.7, 0.0, 0.3, 0.9])
    a, b, c = 0.5 + 0.2j, -0.3 + 1j, 1.5 - 0.5j
    got = hyp2f1(a, b, c, xs)
    ref = [mp_hyp2f1(a, b, c, x) for x in xs]
    assert np.allclose(got, ref, rtol=1e-12, atol=0)


@settings(max_examples=100, deadline=None)
@given(params, params, params, st.floats(-0.9, 0.9, **finite))
def test_euler_transformation(a, b, c, x):
    if min(abs(c - n) for n in range(-6, 1)) < 0.05:
        return
    s = c - a - b
    if abs(s - round(s.real)) < 0.05 or abs((b - a) - round((b - a).real)) < 0.05:
        return
    lhs = hyp2f1(a, b, c, x)
    rhs = (1 - x) ** s * hyp2f1(c - a, c - b, c, x)
    assert abs(lhs - rhs) <= 1e-9 * max(abs(lhs), 1e-3)


@pytest.mark.parametrize("x", [-3.0, -0.6, -0.2, 0.3, 0.6, 0.85])
def test_derivative_identity(x):
    a, b, c = 0.3 + 0.4j, -0.7 + 0.2j, 1.4 - 0.3j
    h = 1e-6
    fd = (hyp2f1(a, b, c, x + h) - hyp2f1(a, b, c, x - h)) / (2 * h)
    d = hyp2f1_deriv(a, b, c, x)
    assert abs(d - fd) <= 1e-6 * abs(d)


@pytest.mark.parametrize("x", np.linspace(0.45, 0.55, 11))
def test_series_and_continuation_agree(x):
    from wsdirac.specfun import _connection, _series

    a, b, c = 0.25 + 0.6j, 0.4 - 0.3j, 1.3 + 0.2j
    direct = _series(a, b, c, np.array([x]))[0]
    cont = _connection(a, b, c, np.array([1 - x]))[0]
    assert abs(direct - cont) <= 1e-9 * abs(direct)


def test_hyp2f1_errors():
    with pytest.raises(PoleError):
        hyp2f1(1, 1, -2, 0.1)
    with pytest.raises(DegenerateError):
        hyp2f1(0.5, 0.5, 2.0, 0.8)  # c - a - b = 1
    with pytest.raises(ValueError):
        hyp2f1(0.5, 0.5, 1.5 + 1j, 1.0)
