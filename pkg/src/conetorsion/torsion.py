"""Analytic torsion of cones over S^1, S^2 and S^3.

Two independent routes are provided. ``torsion_closed`` evaluates the
closed formulas. ``torsion_spectral`` assembles

    log T = (1/2) sum_q (-1)^q q zeta'(0, Delta^(q))

from the eigenvalue tables: fixed-order Bessel families enter through
their closed-form z'(0), and the double families are grouped by base
sequence into zero-weight combinations handled by the decomposition engine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from .anomaly import odd_sphere_coefficients
from .decomp import DEFAULT_TRUNCATION, zeta_zero_and_deriv
from .errors import DomainError, UnsupportedError
from .specfun import ZeroKind
from .spectra import (
    ConeGeometry,
    OrderMap,
    ZeroSequenceSpec,
    bessel_quadratic_zeta_at0,
    spectrum_tables,
    zeta_sphere2,
)


@dataclass(frozen=True)
class TorsionBreakdown:
    """log T split into the volume term and named extra terms.

    For the closed route ``log_torsion == volume_term + sum(extra_terms)``.
    The spectral route reports its own pieces in ``components`` and a single
    extra term equal to the difference from the volume term.
    """

    log_torsion: float
    volume_term: float
    extra_terms: Tuple[Tuple[str, float], ...]
    method: str
    geometry: ConeGeometry
    singular_term: Optional[float] = None
    truncation: Optional[int] = None
    tail_estimate: float = 0.0
    components: Tuple[Tuple[str, float], ...] = ()


# ---------------------------------------------------------------------------
# f(nu) for the cone over S^2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FSeriesResult:
    value: float
    tail_bound: float
    terms: int


F_SERIES_TARGET = 1e-13
F_SERIES_MAX_TERMS = 400
F_SWITCH_NU = 1.5


@lru_cache(maxsize=512)
def _sphere2_zeta(sigma: float) -> float:
    return zeta_sphere2(sigma, 0.0)


def _sphere2_zeta_bound(sigma: float) -> float:
    """Upper bound for sum (2n+1)(n(n+1))^(-sigma), sigma > 1."""
    return 3.0 * 2.0 ** (-sigma) + 2.0 ** (1.0 - sigma) / (sigma - 1.0)


def _f_tail_bound(nu: float, M: int) -> float:
    """Bound on the terms with k + j > M of the f series."""
    total = 0.0
    m = M + 1
    while True:
        term = (m + 1) * 2.0 ** m * 4.0 ** (-m) * nu ** (-2 * m - 1) * _sphere2_zeta_bound(m + 0.5)
        total += term
        if term < 1e-3 * total * 1e-3 or m > M + 2000:
            break
        m += 1
    return total


def f_series(nu: float, terms: Optional[int] = None) -> FSeriesResult:
    """f(nu) from its double power series in 1/nu with a rigorous tail bound.

    ``terms`` is the largest total order k + j kept; by default it grows
    until the bound drops below ``F_SERIES_TARGET``.
    """
    nu = float(nu)
    if not (math.isfinite(nu) and nu >= 1.0):
        raise DomainError(f"f_series needs nu >= 1, got {nu}")
    if terms is None:
        M = 1
        while _f_tail_bound(nu, M) > F_SERIES_TARGET:
            M += 1
            if M > F_SERIES_MAX_TERMS:
                raise DomainError("f series tail bound does not reach the target")
    else:
        if int(terms) != terms or terms < 0:
            raise DomainError("terms must be a non-negative integer")
        M = int(terms)
    parts = []
    for m in range(M + 1):
        zeta_m = _sphere2_zeta(m + 0.5)
        for k in range(m + 1):
            j = m - k
            coef = 1.0 / ((2 * k + 1) * 4.0 ** k) * 4.0 ** (-j) * _binom(-k - 0.5, j)
            parts.append(coef * zeta_m * nu ** (-2 * m - 1))
    value = math.fsum(parts) - math.log(nu * nu / math.pi)
    return FSeriesResult(value, _f_tail_bound(nu, M), M)


def _binom(x: float, j: int) -> float:
    out = 1.0
    for i in range(j):
        out *= (x - i) / (i + 1)
    return out


def f_continuation(nu: float, truncation: int = DEFAULT_TRUNCATION) -> float:
    """f(nu) = F(0, nu) - log(nu^2/pi) with F continued by the A-sum engine.

    F(s, nu) = sum (2n+1) mu_n^(-2s) log((1 + 1/(2 mu_n))/(1 - 1/(2 mu_n))) is
    the A00 sum of the difference of the two G sequences.
    """
    nu = float(nu)
    if not (math.isfinite(nu) and nu >= 1.0):
        raise DomainError(f"f needs nu >= 1, got {nu}")
    om = OrderMap("muS2", nu)
    combo = [(1, ZeroSequenceSpec(ZeroKind.Gplus, om, length=3)),
             (-1, ZeroSequenceSpec(ZeroKind.Gminus, om, length=3))]
    res = zeta_zero_and_deriv(combo, truncation)
    return res.a00 - math.log(nu * nu / math.pi)


def f_value(nu: float) -> float:
    """f(nu): continuation below nu = 1.5, series from there on."""
    if nu < F_SWITCH_NU:
        return f_continuation(nu)
    return f_series(nu).value


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------

def closed_form_coefficients(dim: int) -> Dict[int, Fraction]:
    """{power of sin(alpha): coefficient} of the polynomial extra terms."""
    if dim == 1:
        return {1: Fraction(1, 2)}
    if dim == 2:
        return {2: Fraction(1, 4)}
    if dim == 3:
        return {1: Fraction(3, 4), 3: Fraction(-1, 12)}
    raise UnsupportedError(f"dimension must be 1, 2 or 3, got {dim}")


def torsion_closed(geom: ConeGeometry) -> TorsionBreakdown:
    """log T from the closed formulas.

    n = 1: (1/2)log(pi l^2 a) + a/2
    n = 2: (1/2)log(4 pi l^3 a^2/3) - f(1/a)/2 + a^2/4
    n = 3: (1/2)log(pi^2 l^4 a^3/2) + 3a/4 - a^3/12
    """
    a = geom.a
    volume_term = 0.5 * math.log(geom.volume)
    extras: List[Tuple[str, float]] = []
    for power, coef in closed_form_coefficients(geom.dim).items():
        extras.append((f"{coef}*sin^{power}(alpha)", float(coef) * a ** power))
    if geom.dim == 2:
        extras.insert(0, ("-f(csc alpha)/2", -0.5 * f_value(geom.nu)))
    total = math.fsum([volume_term] + [v for _, v in extras])
    return TorsionBreakdown(total, volume_term, tuple(extras), "closed", geom)


# ---------------------------------------------------------------------------
# Spectral route
# ---------------------------------------------------------------------------

def degree_weight(q: int) -> Fraction:
    """Weight of zeta'(0, Delta^(q)) in log T."""
    return Fraction((-1) ** q * q, 2)


def torsion_spectral(geom: ConeGeometry, tolerance: float = 1e-6,
                     truncation: int = DEFAULT_TRUNCATION,
                     progress: Optional[Callable[[str, int, int], None]] = None) -> TorsionBreakdown:
    """log T assembled from the eigenvalue tables.

    ``progress(stage, done, total)`` is called while the A-sums run.
    """
    if not (tolerance >= 1e-8):
        raise DomainError(f"tolerance must be >= 1e-8, got {tolerance}")
    l = geom.length
    log_l2 = 2.0 * math.log(l)
    tables = spectrum_tables(geom.dim, geom)

    fixed_parts: List[float] = []
    groups: Dict[OrderMap, List[Tuple[Fraction, ZeroSequenceSpec]]] = {}
    for q, entry in tables.items():
        w = degree_weight(q)
        if w == 0:
            continue
        for fam in entry.simple:
            _, z1 = bessel_quadratic_zeta_at0(float(fam.order), 0.0, l)
            fixed_parts.append(float(w) * z1)
        for spec in entry.double:
            groups.setdefault(spec.order_map, []).append((w, spec))

    components: List[Tuple[str, float]] = [("fixed_order", math.fsum(fixed_parts))]
    tail = 0.0
    for om, combo in groups.items():
        merged: Dict[ZeroKind, Tuple[Fraction, ZeroSequenceSpec]] = {}
        for w, spec in combo:
            prev = merged.get(spec.kind, (Fraction(0), None))[0]
            base = ZeroSequenceSpec(spec.kind, om, 1, spec.scale, spec.kappa, spec.length)
            merged[spec.kind] = (prev + w * spec.factor, base)
        active = [(w, s) for w, s in merged.values() if w != 0]
        if not active:
            continue
        cb = None
        if progress is not None:
            cb = lambda done, total, name=om.kind: progress(name, done, total)
        res = zeta_zero_and_deriv(active, truncation, tolerance=tolerance, progress=cb)
        tail = max(tail, res.tail_estimate)
        components.append((f"combination_{om.kind}", res.deriv + log_l2 * res.value))

    total = math.fsum(v for _, v in components)
    volume_term = 0.5 * math.log(geom.volume)
    return TorsionBreakdown(
        total,
        volume_term,
        (("spectral_minus_volume", total - volume_term),),
        "spectral",
        geom,
        truncation=truncation,
        tail_estimate=tail,
        components=tuple(components),
    )


# ---------------------------------------------------------------------------
# Conjectured formula for cones over odd spheres
# ---------------------------------------------------------------------------

def unit_sphere_volume(dim: int) -> float:
    """Volume of the unit sphere S^dim."""
    return 2.0 * math.pi ** ((dim + 1) / 2.0) / math.gamma((dim + 1) / 2.0)


def cone_volume_odd(p: int, alpha: float, l: float) -> float:
    """Volume of the cone over S^(2p-1) of radius l sin(alpha): Vol(S^(2p-1)) (l a)^(2p-1) l/(2p)."""
    a = math.sin(alpha)
    return unit_sphere_volume(2 * p - 1) * (l * a) ** (2 * p - 1) * l / (2 * p)


def conjecture_coefficients(p: int) -> Dict[int, Fraction]:
    """Exact {power of sin(alpha): coefficient} of the conjectured extra terms."""
    return odd_sphere_coefficients(p)


def conjecture_formula(p: int, alpha: float, l: float) -> float:
    """Conjectured log T for the cone over S^(2p-1)."""
    if int(p) != p or p < 1:
        raise DomainError(f"p must be a positive integer, got {p}")
    if not (0.0 < alpha <= math.pi / 2):
        raise DomainError(f"alpha must lie in (0, pi/2], got {alpha}")
    if not (l > 0.0 and math.isfinite(l)):
        raise DomainError(f"l must be positive, got {l}")
    a = math.sin(alpha)
    extra = math.fsum(float(c) * a ** k for k, c in conjecture_coefficients(p).items())
    return 0.5 * math.log(cone_volume_odd(p, alpha, l)) + extra


__all__ = [
    "FSeriesResult",
    "TorsionBreakdown",
    "closed_form_coefficients",
    "cone_volume_odd",
    "conjecture_coefficients",
    "conjecture_formula",
    "degree_weight",
    "f_continuation",
    "f_series",
    "f_value",
    "torsion_closed",
    "torsion_spectral",
    "unit_sphere_volume",
]
