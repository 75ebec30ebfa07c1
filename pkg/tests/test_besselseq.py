from __future__ import annotations

from fractions import Fraction

import pytest

from conetorsion.besselseq import (
    ERRATA,
    REFERENCE_TABLES,
    delta_coefficient,
    derived_polynomial,
    expansion_check,
    expansion_order,
    ledger,
    log_gamma_double,
    phi_combination,
    phi_functions,
    reference_polynomial,
)
from conetorsion.errors import BranchError, DomainError, UnsupportedError
from conetorsion.specfun import AsymptoticPolynomial, ZeroKind
from conetorsion.spectra import OrderMap, ZeroSequenceSpec

KINDS = [(ZeroKind.J, "mu1"), (ZeroKind.Jprime, "mu1"), (ZeroKind.Tplus, "mu0"),
         (ZeroKind.Tminus, "mu0"), (ZeroKind.Gplus, "muS2"), (ZeroKind.Gminus, "muS2")]


@pytest.mark.parametrize("key", sorted(REFERENCE_TABLES))
def test_derivation_matches_corrected_tables(key):
    assert derived_polynomial(key) == reference_polynomial(key, corrected=True)


def test_errata_are_exactly_the_disagreements():
    disagree = {k for k in REFERENCE_TABLES if derived_polynomial(k) != REFERENCE_TABLES[k]}
    assert disagree == set(ERRATA)
    assert len(ERRATA) == 4
    # corrected values frozen from the hand derivation
    assert dict(ERRATA["W2+"].p_powers()).get(2) == Fraction(1, 128)
    assert dict(ERRATA["W2-half"].p_powers()).get(2) == Fraction(-23, 128)
    assert dict(ERRATA["PartI-2"].p_powers()).get(6) == Fraction(3, 4)


def test_printed_u1():
    assert REFERENCE_TABLES["U1"] == AsymptoticPolynomial.from_p_powers({1: Fraction(1, 8), 3: Fraction(-5, 24)})


@pytest.mark.parametrize("kind,om", KINDS)
def test_ledger_pole_coefficients(kind, om):
    expected = {
        ZeroKind.Tplus: {1: Fraction(11, 12), 3: Fraction(121, 360)},
        ZeroKind.Tminus: {1: Fraction(-13, 12), 3: Fraction(-119, 360)},
        ZeroKind.J: {1: Fraction(-1, 12), 3: Fraction(1, 360)},
        ZeroKind.Jprime: {1: Fraction(-1, 12), 3: Fraction(1, 360)},
        ZeroKind.Gplus: {2: Fraction(-1, 8)},
        ZeroKind.Gminus: {2: Fraction(-1, 8)},
    }[kind]
    led = ledger(ZeroSequenceSpec(kind, OrderMap(om, 1.0)))
    assert {sigma: b0 for sigma, b0, _ in led.b} == expected
    assert all(b1 == 0 for _, _, b1 in led.b)


@pytest.mark.parametrize("kind,om", KINDS)
def test_expansion_error_decays_like_mu_minus_four(kind, om):
    spec = ZeroSequenceSpec(kind, OrderMap(om, 1.0))
    assert 3.5 <= expansion_order(spec, 49, 99) <= 4.5
    assert expansion_check(spec, 99) < 1e-6


def test_log_gamma_branch():
    spec = ZeroSequenceSpec(ZeroKind.J, OrderMap("mu1", 1.0))
    with pytest.raises(BranchError):
        log_gamma_double(0.5, 3, spec)
    assert isinstance(log_gamma_double(-1.0, 3, spec), float)
    assert isinstance(log_gamma_double(-1.0 + 1.0j, 3, spec), complex)


def test_phi_combinations_cancel_constants():
    # zero-weight combinations have no constant term at sigma = 1 and 3
    for combo in ("Jprime-J", "2J-Tplus-Tminus"):
        for sigma in (1, 3):
            assert phi_combination(combo, sigma).constant == 0
    assert phi_combination("Gplus-Gminus", 2).constant == 0


def test_phi_range_and_delta():
    spec = ZeroSequenceSpec(ZeroKind.J, OrderMap("mu1", 1.0))
    with pytest.raises((DomainError, UnsupportedError)):
        phi_functions(spec, 10)
    assert isinstance(delta_coefficient(ZeroKind.Tplus, 1), Fraction)
