from __future__ import annotations

import math
from fractions import Fraction

import mpmath
import pytest

from conetorsion import decomp
from conetorsion.besselseq import phi_combination
from conetorsion.decomp import (
    contour_integral_check,
    exact_digamma,
    phi_at_zero,
    phi_mellin,
    thread_count,
    zeta_zero_and_deriv,
)
from conetorsion.errors import DomainError, InsufficientTruncationError, UnsupportedError
from conetorsion.specfun import AsymptoticPolynomial, ZeroKind
from conetorsion.spectra import OrderMap, ZeroSequenceSpec

ZP2 = float(mpmath.zeta(-2, 1, 1))


def part_one(nu, **kw):
    u = OrderMap("mu1", nu)
    return zeta_zero_and_deriv([(1, ZeroSequenceSpec(ZeroKind.Jprime, u)),
                                (-1, ZeroSequenceSpec(ZeroKind.J, u))], **kw)


def part_two(nu, **kw):
    u = OrderMap("mu0", nu)
    return zeta_zero_and_deriv([(2, ZeroSequenceSpec(ZeroKind.J, u)),
                                (-1, ZeroSequenceSpec(ZeroKind.Tplus, u)),
                                (-1, ZeroSequenceSpec(ZeroKind.Tminus, u))], **kw)


@pytest.mark.parametrize("a", [Fraction(1), Fraction(2), Fraction(5), Fraction(1, 2), Fraction(3, 2), Fraction(7, 2)])
def test_exact_digamma(a):
    assert float(exact_digamma(a)) == pytest.approx(float(mpmath.digamma(float(a))), rel=1e-14)


def test_exact_digamma_rejects_other_arguments():
    with pytest.raises(UnsupportedError):
        exact_digamma(Fraction(1, 3))


def test_phi_transform_value_and_zero():
    poly = AsymptoticPolynomial.from_p_powers({2: Fraction(1, 3), 4: Fraction(-1, 5)})
    t = phi_mellin(poly)
    s = 0.37
    ref = math.fsum(float(c) * math.gamma(s + float(a)) / (math.gamma(float(a)) * s) for c, a in t.terms)
    assert t.value(s) == pytest.approx(ref, rel=1e-13)
    mv = phi_at_zero(t)
    assert mv.residue == pytest.approx(float(t.exact_residue))
    with pytest.raises(DomainError):
        t.value(0.0)


def test_phi_mellin_needs_zero_constant():
    with pytest.raises(DomainError):
        phi_mellin(AsymptoticPolynomial.from_p_powers({2: Fraction(1)}) + 1)


@pytest.mark.parametrize("sigma,want", [(1, Fraction(-1)), (2, Fraction(1, 8)), (3, Fraction(-2, 315))])
def test_part_one_phi_finite_parts(sigma, want):
    fp = phi_mellin(phi_combination("Jprime-J", sigma), drop_constant=True).exact_finite_part
    assert fp.is_rational and fp.rational == want


@pytest.mark.parametrize("sigma,want", [(1, Fraction(2)), (3, Fraction(214, 315))])
def test_part_two_phi_finite_parts(sigma, want):
    fp = phi_mellin(phi_combination("2J-Tplus-Tminus", sigma), drop_constant=True).exact_finite_part
    assert fp.is_rational and fp.rational == want


@pytest.mark.parametrize("nu", [1.0, 1.5, 2.0, 4.0])
def test_part_one(nu):
    r = part_one(nu)
    assert r.value == pytest.approx(0.25, abs=1e-12)
    ref = -0.5 * math.log(nu) + ZP2 + 0.5 * math.log(2 * math.pi) + 1 / (2 * nu) - 1 / (315 * nu ** 3)
    assert r.deriv == pytest.approx(ref, abs=1e-10)


@pytest.mark.parametrize("nu", [1.0, 1.5, 2.0, 4.0])
def test_part_two(nu):
    r = part_two(nu)
    assert r.value == pytest.approx(1.0, abs=1e-12)
    ref = (-2 * math.log(nu) - 2 * ZP2 + math.log(math.pi)
           + (1 - 1 / nu ** 2) / (2 * nu) + 107 / (315 * nu ** 3))
    assert r.deriv == pytest.approx(ref, abs=1e-10)


def test_tail_estimate_and_tolerance(monkeypatch):
    r = part_one(1.5)
    assert 0.0 <= r.tail_estimate < 1e-10
    # with only two subtracted terms the Part II remainder decays slowly
    # enough for the change between N and 2N to show
    monkeypatch.setattr(decomp, "SERIES_TERMS_K", 2)
    with pytest.raises(InsufficientTruncationError):
        part_two(1.5, truncation=100, tolerance=1e-6)


def test_weights_must_cancel():
    u = OrderMap("mu1", 1.0)
    with pytest.raises(DomainError):
        zeta_zero_and_deriv([(1, ZeroSequenceSpec(ZeroKind.J, u))])


def test_mixed_order_maps_rejected():
    with pytest.raises(UnsupportedError):
        zeta_zero_and_deriv([(1, ZeroSequenceSpec(ZeroKind.J, OrderMap("mu1", 1.0))),
                             (-1, ZeroSequenceSpec(ZeroKind.Jprime, OrderMap("mu1", 2.0)))])


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("CONETORSION_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("CONETORSION_THREADS", "zero")
    with pytest.raises(DomainError):
        thread_count()
    monkeypatch.setenv("CONETORSION_THREADS", "0")
    with pytest.raises(DomainError):
        thread_count()


def test_result_independent_of_thread_count(monkeypatch):
    monkeypatch.setenv("CONETORSION_THREADS", "1")
    a = part_two(1.3)
    monkeypatch.setenv("CONETORSION_THREADS", "4")
    b = part_two(1.3)
    assert a.deriv == b.deriv and a.value == b.value


def test_progress_callback():
    seen = []
    part_one(1.0, progress=lambda done, total: seen.append((done, total)))
    assert seen and seen[-1][0] == seen[-1][1]


@pytest.mark.parametrize("s,a", [(0.3, 0.5), (0.5, 1.0), (0.7, 1.0), (1.2, 2.5)])
def test_contour_formula(s, a):
    want = float(mpmath.gamma(s + a) / (mpmath.gamma(a) * s))
    assert contour_integral_check(s, a) == pytest.approx(want, rel=1e-6)
