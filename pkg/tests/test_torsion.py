from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from conetorsion.errors import DomainError
from conetorsion.spectra import ConeGeometry
from conetorsion.torsion import (
    closed_form_coefficients,
    conjecture_formula,
    degree_weight,
    f_continuation,
    f_series,
    f_value,
    torsion_closed,
    torsion_spectral,
    unit_sphere_volume,
)


def closed_oracle(n, alpha, l, f=None):
    a = mpmath.sin(alpha)
    if n == 1:
        return float(mpmath.log(mpmath.pi * l ** 2 * a) / 2 + a / 2)
    if n == 2:
        return float(mpmath.log(4 * mpmath.pi * l ** 3 * a ** 2 / 3) / 2 - f / 2 + a ** 2 / 4)
    return float(mpmath.log(mpmath.pi ** 2 * l ** 4 * a ** 3 / 2) / 2 + 3 * a / 4 - a ** 3 / 12)


def f_oracle(nu):
    """f(nu) from the double series, summed in mpmath with the S^2 zeta by the binomial identity."""
    nu = mpmath.mpf(nu)

    def zs2(sigma):
        d = -mpmath.mpf(1) / 4
        tot = mpmath.mpf(0)
        for j in range(300):
            t = mpmath.binomial(-sigma, j) * d ** j * 2 * mpmath.zeta(2 * sigma + 2 * j - 1, mpmath.mpf(3) / 2)
            tot += t
            if j > 3 and abs(t) < mpmath.mpf(10) ** -28:
                break
        return tot

    total = mpmath.mpf(0)
    for m in range(80):
        zm = zs2(m + mpmath.mpf(1) / 2)
        for k in range(m + 1):
            j = m - k
            total += (1 / ((2 * k + 1) * mpmath.mpf(4) ** k) * mpmath.mpf(4) ** -j
                      * mpmath.binomial(-k - mpmath.mpf(1) / 2, j) * zm * nu ** (-2 * m - 1))
    return float(total - mpmath.log(nu ** 2 / mpmath.pi))


@pytest.mark.parametrize("n", [1, 3])
@pytest.mark.parametrize("alpha", [math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2])
@pytest.mark.parametrize("l", [0.5, 1.0, 2.0])
def test_closed_odd(n, alpha, l):
    b = torsion_closed(ConeGeometry(n, alpha, l))
    assert b.log_torsion == pytest.approx(closed_oracle(n, alpha, l), abs=1e-13)
    assert b.log_torsion == pytest.approx(b.volume_term + sum(v for _, v in b.extra_terms), abs=1e-14)


@pytest.mark.parametrize("alpha", [math.pi / 6, math.pi / 4, math.pi / 3])
def test_closed_n2(alpha):
    nu = 1 / math.sin(alpha)
    b = torsion_closed(ConeGeometry(2, alpha, 1.3))
    assert b.log_torsion == pytest.approx(closed_oracle(2, alpha, 1.3, f_oracle(nu)), abs=1e-10)


def test_spot_values():
    assert torsion_closed(ConeGeometry(1, math.pi / 2)).log_torsion == pytest.approx(1.0723649, abs=1e-6)
    assert torsion_closed(ConeGeometry(3, math.pi / 2)).log_torsion == pytest.approx(1.4648233, abs=1e-6)


def test_closed_coefficients():
    assert closed_form_coefficients(3) == {1: Fraction(3, 4), 3: Fraction(-1, 12)}


def test_f_at_one():
    assert f_continuation(1.0) == pytest.approx(-math.log(2), abs=1e-12)
    assert f_series(1.0).value == pytest.approx(-math.log(2), abs=1e-12)


@pytest.mark.parametrize("nu", [1.2, 2.0, 3.0, 7.0])
def test_f_series_against_oracle(nu):
    res = f_series(nu)
    assert res.value == pytest.approx(f_oracle(nu), abs=1e-12)
    assert res.tail_bound < 1e-12


@pytest.mark.parametrize("nu", [1.5, 2.0, 2.5, 3.0])
def test_f_routes_agree(nu):
    assert f_continuation(nu) == pytest.approx(f_series(nu).value, abs=1e-11)


@pytest.mark.parametrize("nu,M", [(1.0, 3), (1.3, 5), (2.0, 2)])
def test_f_tail_bound_is_a_bound(nu, M):
    short = f_series(nu, terms=M)
    full = f_series(nu)
    assert abs(short.value - full.value) <= short.tail_bound + full.tail_bound


def test_f_domain():
    with pytest.raises(DomainError):
        f_series(0.9)
    with pytest.raises(DomainError):
        f_continuation(float("nan"))
    assert f_value(1.2) == pytest.approx(f_continuation(1.2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_spectral_matches_closed_grid_corner(n):
    g = ConeGeometry(n, math.pi / 5, 1.7)
    s = torsion_spectral(g)
    assert s.log_torsion == pytest.approx(torsion_closed(g).log_torsion, abs=1e-10)
    assert s.truncation is not None and s.tail_estimate < 1e-6


@settings(max_examples=12, deadline=None)
@given(st.sampled_from([1, 2, 3]), st.floats(0.15, math.pi / 2), st.floats(0.2, 5.0))
def test_dual_path_property(n, alpha, l):
    g = ConeGeometry(n, alpha, l)
    assert torsion_spectral(g).log_torsion == pytest.approx(torsion_closed(g).log_torsion, abs=1e-8)


def test_spectral_tolerance_validation():
    with pytest.raises(DomainError):
        torsion_spectral(ConeGeometry(1, 1.0), tolerance=1e-12)


def test_degree_weights():
    assert [degree_weight(q) for q in range(5)] == [0, Fraction(-1, 2), 1, Fraction(-3, 2), 2]


def test_unit_sphere_volume():
    assert unit_sphere_volume(1) == pytest.approx(2 * math.pi)
    assert unit_sphere_volume(2) == pytest.approx(4 * math.pi)
    assert unit_sphere_volume(3) == pytest.approx(2 * math.pi ** 2)


@pytest.mark.parametrize("alpha", [0.3, 1.0, math.pi / 2])
def test_conjecture_matches_closed(alpha):
    assert conjecture_formula(1, alpha, 0.8) == pytest.approx(torsion_closed(ConeGeometry(1, alpha, 0.8)).log_torsion, abs=1e-13)
    assert conjecture_formula(2, alpha, 0.8) == pytest.approx(torsion_closed(ConeGeometry(3, alpha, 0.8)).log_torsion, abs=1e-13)


def test_conjecture_domain():
    with pytest.raises(DomainError):
        conjecture_formula(0, 1.0, 1.0)
    with pytest.raises(DomainError):
        conjecture_formula(2, 2.0, 1.0)


@pytest.mark.parametrize("n,coef", [(1, 1.0), (2, 1.5), (3, 2.0)])
def test_length_scaling(n, coef):
    # log T(l) - log T(1) = (1/2) log(l^(n+1)); the extra terms do not depend on l
    alpha, l = 0.9, 2.5
    closed = torsion_closed(ConeGeometry(n, alpha, l)).log_torsion - torsion_closed(ConeGeometry(n, alpha, 1.0)).log_torsion
    assert closed == pytest.approx(coef * math.log(l), abs=1e-13)
    spectral = (torsion_spectral(ConeGeometry(n, alpha, l)).log_torsion
                - torsion_spectral(ConeGeometry(n, alpha, 1.0)).log_torsion)
    assert spectral == pytest.approx(coef * math.log(l), abs=1e-12)


def test_log_l2_coefficient_n3_is_one():
    l = math.exp(0.5)  # log l^2 = 1
    g1, gl = ConeGeometry(3, math.pi / 2, 1.0), ConeGeometry(3, math.pi / 2, l)
    assert torsion_spectral(gl).log_torsion - torsion_spectral(g1).log_torsion == pytest.approx(1.0, abs=1e-12)


def test_f_large_nu_behaviour():
    # f(nu) + log(nu^2/pi) = F(0, nu) -> 0 as nu grows
    vals = [abs(f_series(nu).value + math.log(nu * nu / math.pi)) for nu in (10.0, 100.0, 1000.0)]
    assert vals[0] > vals[1] > vals[2] and vals[2] < 1e-2
