from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conetorsion.errors import BesselOverflowError, DomainError, UnsupportedError
from conetorsion.specfun import (
    AsymptoticPolynomial,
    ZeroKind,
    bernoulli,
    bessel_i,
    digamma,
    find_zeros,
    hurwitz_zeta,
    hurwitz_zeta_deriv,
    log_bessel_i,
    log_bessel_i_prime,
    riemann_zeta,
    riemann_zeta_deriv,
    stirling_remainder,
    u_polynomial,
    uv_coefficients,
    zero_function,
)


@pytest.mark.parametrize("s", [-4.0, -2.5, -1.0, -0.5, 0.0, 0.3, 0.5, 0.99, 1.5, 2.0, 3.7, 10.0, 40.0])
@pytest.mark.parametrize("a", [0.3, 1.0, 1.5, 2.0, 7.25])
def test_hurwitz_against_mpmath(s, a):
    ref = float(mpmath.zeta(s, a))
    assert hurwitz_zeta(s, a) == pytest.approx(ref, rel=1e-12, abs=1e-13)
    dref = float(mpmath.zeta(s, a, 1))
    assert hurwitz_zeta_deriv(s, a) == pytest.approx(dref, rel=1e-11, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.floats(-3.5, 25.0).filter(lambda s: abs(s - 1.0) > 1e-3), st.floats(0.2, 6.0))
def test_hurwitz_property(s, a):
    assert hurwitz_zeta(s, a) == pytest.approx(float(mpmath.zeta(s, a)), rel=1e-10, abs=1e-11)


def test_hurwitz_pole():
    with pytest.raises(DomainError):
        hurwitz_zeta(1.0, 2.0)


def test_riemann_values():
    assert riemann_zeta(2.0) == pytest.approx(math.pi ** 2 / 6, rel=1e-14)
    assert riemann_zeta(0.0) == pytest.approx(-0.5, abs=1e-15)
    assert riemann_zeta_deriv(0.0) == pytest.approx(-0.5 * math.log(2 * math.pi), rel=1e-13)
    assert riemann_zeta_deriv(-2.0) == pytest.approx(float(mpmath.zeta(-2, 1, 1)), rel=1e-12)


def test_bernoulli_exact():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert bernoulli(7) == 0


@pytest.mark.parametrize("x", [0.5, 1.0, 2.5, 10.0])
def test_gamma_helpers(x):
    assert digamma(x) == pytest.approx(float(mpmath.digamma(x)), rel=1e-13)
    rem = float(stirling_remainder(np.array([x]))[0])
    ref = float(mpmath.loggamma(x + 1) - ((x + 0.5) * mpmath.log(x) - x + 0.5 * mpmath.log(2 * mpmath.pi)))
    assert rem == pytest.approx(ref, rel=1e-10, abs=1e-13)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 2.5, 20.0, 80.0])
@pytest.mark.parametrize("x", [0.01, 0.7, 5.0, 60.0, 400.0])
def test_log_bessel_i(nu, x):
    ref = float(mpmath.log(mpmath.besseli(nu, x)))
    assert log_bessel_i(nu, x) == pytest.approx(ref, rel=1e-12, abs=1e-12)
    dref = float(mpmath.log(mpmath.besseli(nu, x, derivative=1)))
    if nu == 0.0 and x < 0.05:
        return
    assert log_bessel_i_prime(nu, x) == pytest.approx(dref, rel=1e-11, abs=1e-11)


def test_bessel_overflow_raises():
    with pytest.raises(BesselOverflowError):
        bessel_i(0.0, 1000.0)


@pytest.mark.parametrize("nu", [0.0, 0.5, 1.0, 3.0, 12.5])
def test_j_zeros_against_mpmath(nu):
    z = find_zeros(ZeroKind.J, nu, 12)
    for k in (1, 2, 7, 12):
        assert z[k - 1] == pytest.approx(float(mpmath.besseljzero(nu, k)), rel=1e-13)


@pytest.mark.parametrize("nu", [0.5, 1.0, 4.0])
def test_jprime_zeros_against_mpmath(nu):
    z = find_zeros(ZeroKind.Jprime, nu, 6)
    for k in (1, 3, 6):
        assert z[k - 1] == pytest.approx(float(mpmath.besseljzero(nu, k, derivative=1)), rel=1e-12)


def test_jprime_order_zero_skips_origin():
    z = find_zeros(ZeroKind.Jprime, 0.0, 3)
    assert z[0] == pytest.approx(float(mpmath.besseljzero(1, 1)), rel=1e-13)


@pytest.mark.parametrize("kind,c", [(ZeroKind.Tplus, 1), (ZeroKind.Tminus, -1),
                                    (ZeroKind.Gplus, 0.5), (ZeroKind.Gminus, -0.5)])
@pytest.mark.parametrize("nu", [1.5, 3.0, 10.0])
def test_mixed_zeros_are_roots(kind, c, nu):
    zs = find_zeros(kind, nu, 8)
    assert np.all(np.diff(zs) > 0)
    for z in zs:
        val = c * mpmath.besselj(nu, z) + z * mpmath.besselj(nu, z, derivative=1)
        scale = abs(z * mpmath.besselj(nu, z, derivative=1)) + abs(mpmath.besselj(nu, z)) + 1e-300
        assert abs(float(val)) < 1e-12 * max(1.0, float(scale)) * max(1.0, z)
    # the k-th zero sits between consecutive zeros of J
    j = find_zeros(ZeroKind.J, nu, 9)
    assert np.all(zs < j[:8])
    assert np.all(zs[1:] > j[:7])


def test_zero_domain_errors():
    with pytest.raises(DomainError):
        find_zeros(ZeroKind.Tminus, 1.0, 3)
    with pytest.raises(DomainError):
        find_zeros(ZeroKind.Gminus, 0.5, 3)
    with pytest.raises(DomainError):
        find_zeros(ZeroKind.J, -1.0, 3)
    with pytest.raises(DomainError):
        find_zeros(ZeroKind.J, 1.0, 0)
    with pytest.raises(UnsupportedError):
        ZeroKind.parse("hankel")


def test_many_zeros_fast_and_ordered():
    z = find_zeros(ZeroKind.J, 2.0, 10_000)
    assert np.all(np.diff(z) > 0)
    # McMahon: j_{nu,k} ~ (k + nu/2 - 1/4) pi
    assert z[-1] == pytest.approx((10_000 + 1.0 - 0.25) * math.pi, rel=1e-8)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 40.0), st.integers(1, 40))
def test_zero_residual_property(nu, count):
    z = find_zeros(ZeroKind.J, nu, count)
    from scipy import special
    assert np.max(np.abs(special.jv(nu, z))) < 1e-12
    assert np.all(np.diff(z) > 0)


def test_zero_function_kinds():
    assert zero_function(ZeroKind.J, 0.0, 2.404825557695773) == pytest.approx(0.0, abs=1e-14)


def test_olver_polynomials():
    # u1(t) = (3t - 5t^3)/24, u2(t) = (81t^2 - 462t^4 + 385t^6)/1152
    assert u_polynomial(1) == {1: Fraction(3, 24), 3: Fraction(-5, 24)}
    assert u_polynomial(2) == {2: Fraction(81, 1152), 4: Fraction(-462, 1152), 6: Fraction(385, 1152)}
    u1, v1 = uv_coefficients(1)
    assert isinstance(u1, AsymptoticPolynomial)
    # v1(t) = (-9t + 7t^3)/24
    assert v1 == AsymptoticPolynomial.from_p_powers({1: Fraction(-9, 24), 3: Fraction(7, 24)})


def test_asymptotic_polynomial_arithmetic():
    p = AsymptoticPolynomial.from_p_powers({1: Fraction(1, 2), 3: Fraction(1)})
    q = AsymptoticPolynomial.from_p_powers({1: Fraction(-1, 2)})
    s = p + q
    assert s == AsymptoticPolynomial.from_p_powers({3: Fraction(1)})
    assert (p - p) == AsymptoticPolynomial.from_p_powers({})
    lam = -3.0
    assert (p * q)(lam) == pytest.approx(p(lam) * q(lam), rel=1e-14)
