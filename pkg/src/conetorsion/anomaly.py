"""Boundary anomaly, Reidemeister torsion and the singular contribution.

The anomaly compares the cone metric with a metric that is a product near
the boundary. For a cone over S^(2p-1) it is an odd polynomial in
a = sin(alpha), and for a cone over S^(2p) an even one. Both are built here
with exact rational coefficients.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .errors import DomainError, UnsupportedError
from .spectra import ConeGeometry


def double_factorial(n: int) -> int:
    """n!! with the convention (-1)!! = 0!! = 1."""
    if n < -1:
        raise DomainError("double factorial needs n >= -1")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _check_p(p: int) -> None:
    if int(p) != p or p < 1:
        raise DomainError(f"p must be a positive integer, got {p}")


def odd_sphere_coefficients(p: int) -> Dict[int, Fraction]:
    """{power of a: coefficient} of the anomaly for a cone over S^(2p-1)."""
    _check_p(p)
    prefactor = Fraction(math.factorial(2 * p - 1), 4 ** p * math.factorial(p - 1))
    coeffs: Dict[int, Fraction] = {}
    for j in range(p):
        outer = Fraction(2 ** (p - j), math.factorial(j) * double_factorial(2 * (p - j) - 1))
        for h in range(j + 1):
            term = outer * math.comb(j, h) * (-1) ** h / (2 * (p - j + h) - 1) * prefactor
            power = 2 * p - 1 - 2 * (j - h)
            coeffs[power] = coeffs.get(power, Fraction(0)) + term
    return {k: v for k, v in sorted(coeffs.items()) if v != 0}


EVEN_SPHERE_EULER_CHARACTERISTIC = 2


def even_sphere_coefficients(p: int) -> Dict[int, Fraction]:
    """{power of a: coefficient} of the anomaly for a cone over S^(2p)."""
    _check_p(p)
    chi = EVEN_SPHERE_EULER_CHARACTERISTIC
    coeffs: Dict[int, Fraction] = {}
    # the upper limit [p - 1/2] is p - 1
    for j in range(p):
        outer = Fraction(1, math.factorial(j) * math.factorial(p - j))
        for h in range(j + 1):
            term = outer * math.comb(j, h) * (-1) ** h / (p - j + h) * Fraction(chi, 8)
            power = 2 * p - 2 * (j - h)
            coeffs[power] = coeffs.get(power, Fraction(0)) + term
    return {k: v for k, v in sorted(coeffs.items()) if v != 0}


def evaluate_polynomial(coeffs: Dict[int, Fraction], a: float) -> float:
    return math.fsum(float(c) * a ** k for k, c in coeffs.items())


@dataclass(frozen=True)
class AnomalyResult:
    """Anomaly value with its exact coefficients in powers of a."""

    value: float
    parity: str
    coefficients: Tuple[Tuple[int, Fraction], ...]

    @property
    def exact_coefficients(self) -> Dict[int, Fraction]:
        return dict(self.coefficients)


def _check_a(a: float) -> None:
    if not (0.0 < a <= 1.0):
        raise DomainError(f"a = sin(alpha) must lie in (0, 1], got {a}")


def anomaly_even_sphere(p: int, a: float) -> AnomalyResult:
    """Anomaly for the cone over S^(2p); p = 1 gives a^2/4."""
    _check_a(a)
    coeffs = even_sphere_coefficients(p)
    return AnomalyResult(evaluate_polynomial(coeffs, a), "even", tuple(coeffs.items()))


def anomaly_odd_sphere(p: int, a: float) -> AnomalyResult:
    """Anomaly for the cone over S^(2p-1); p = 1 gives a/2 and p = 2 gives 3a/4 - a^3/12."""
    _check_a(a)
    coeffs = odd_sphere_coefficients(p)
    return AnomalyResult(evaluate_polynomial(coeffs, a), "odd", tuple(coeffs.items()))


def boundary_anomaly(geom: ConeGeometry) -> AnomalyResult:
    if geom.dim == 1:
        return anomaly_odd_sphere(1, geom.a)
    if geom.dim == 2:
        return anomaly_even_sphere(1, geom.a)
    if geom.dim == 3:
        return anomaly_odd_sphere(2, geom.a)
    raise UnsupportedError(f"no anomaly for dimension {geom.dim}")


SPHERE_EULER_CHARACTERISTIC = {1: 0, 2: 2, 3: 0}


def luck_term(geom: ConeGeometry) -> float:
    """(1/4) chi(boundary) log 2 for a product metric near the boundary."""
    return 0.25 * SPHERE_EULER_CHARACTERISTIC[geom.dim] * math.log(2.0)


def reidemeister(geom: ConeGeometry) -> float:
    """log of the Reidemeister torsion: half the log of the cone volume."""
    if geom.dim not in (1, 2, 3):
        raise UnsupportedError(f"no Reidemeister torsion for dimension {geom.dim}")
    return 0.5 * math.log(geom.volume)


@dataclass(frozen=True)
class CMDecomposition:
    """Smooth prediction, actual torsion and their difference (the singular term)."""

    predicted_smooth: float
    actual: float
    singular_term: float

    def __iter__(self):
        return iter((self.predicted_smooth, self.actual, self.singular_term))


def cm_decomposition(geom: ConeGeometry) -> CMDecomposition:
    """Compare log T with Reidemeister + boundary (Lueck) term + anomaly."""
    from .torsion import torsion_closed

    predicted = math.fsum([reidemeister(geom), luck_term(geom), boundary_anomaly(geom).value])
    actual = torsion_closed(geom).log_torsion
    return CMDecomposition(predicted, actual, actual - predicted)


def singular_coefficients(dim: int) -> Dict[int, Fraction]:
    """Exact sin(alpha)-polynomial part of the singular term for dim 1 and 3.

    Both are empty (identically zero); dim 2 also involves f(csc alpha) and
    log 2, which are not polynomial, so it is rejected.
    """
    from .torsion import closed_form_coefficients

    if dim == 1:
        anomaly = odd_sphere_coefficients(1)
    elif dim == 3:
        anomaly = odd_sphere_coefficients(2)
    else:
        raise UnsupportedError("the singular term is polynomial in sin(alpha) only for dim 1 and 3")
    closed = closed_form_coefficients(dim)
    keys = set(closed) | set(anomaly)
    diff = {k: closed.get(k, Fraction(0)) - anomaly.get(k, Fraction(0)) for k in keys}
    return {k: v for k, v in sorted(diff.items()) if v != 0}
