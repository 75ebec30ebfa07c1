"""Double sequences of Bessel-type zeros and their expansion coefficients.

For a family of zeros z_{mu,k} of order mu the Gamma function
log Gamma(-lambda, S/mu^2) = -sum_k log(1 - lambda mu^2/z_{mu,k}^2) has a
closed form through I_mu and I_mu'. For large mu it expands uniformly in
lambda as

    sum_{sigma >= -1} phi_sigma(lambda) mu^(-sigma),

where phi_{-1} and phi_0 are elementary and every phi_sigma with
sigma >= 1 is a polynomial in p = (1 - lambda)^(-1/2) plus a constant.
Those polynomials are derived here exactly from the Olver polynomials:

    phi_sigma = -L_sigma - S_sigma + delta_sigma,

with L_sigma the coefficients of log(1 + sum_k X_k mu^(-k)) (X_k = U_k for
zeros of J and X_k = V_k + c p U_{k-1} for zeros of c J + z J'), S_sigma the
Stirling coefficients of log Gamma(mu + 1) and delta_sigma the coefficients
of log(1 + c/mu).

``REFERENCE_TABLES`` holds the same polynomials as printed in the source
derivation, and ``ERRATA`` lists the entries whose printed value
disagrees with the derivation together with the corrected value.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special as _sp

from .errors import BesselOverflowError, BranchError, DomainError, UnsupportedError
from .spectra import OrderMap, ZeroSequenceSpec
from .specfun import (
    AsymptoticPolynomial,
    LOG_2PI,
    ZeroKind,
    _padd,
    _pmul,
    _pscale,
    log_bessel_i,
    log_bessel_i_prime,
    log_series_coefficients,
    stirling_coefficient,
    stirling_remainder,
    u_polynomial,
    v_polynomial,
)

__all__ = [
    "ZeroSequenceSpec",
    "CoefficientLedger",
    "COMBINATIONS",
    "DEFAULT_LAMBDA_GRID",
    "ERRATA",
    "REFERENCE_TABLES",
    "delta_coefficient",
    "expansion_check",
    "expansion_order",
    "ledger",
    "log_gamma_double",
    "phi_combination",
    "phi_functions",
    "phi_minus1",
    "phi_polynomial",
    "phi_zero",
    "reference_polynomial",
]

F = Fraction
DEFAULT_LAMBDA_GRID = (-0.5, -1.0, -2.0, -5.0, -10.0)

# Number of phi_sigma polynomials (sigma = 1..3) used in the uniform expansion.
PHI_ORDER = 3

# Combinations of zero kinds over a common base sequence, with their weights.
COMBINATIONS: Dict[str, Dict[ZeroKind, Fraction]] = {
    "Jprime-J": {ZeroKind.Jprime: F(1), ZeroKind.J: F(-1)},
    "J-Jprime": {ZeroKind.J: F(1), ZeroKind.Jprime: F(-1)},
    "2J-Tplus-Tminus": {ZeroKind.J: F(2), ZeroKind.Tplus: F(-1), ZeroKind.Tminus: F(-1)},
    "Gplus-Gminus": {ZeroKind.Gplus: F(1), ZeroKind.Gminus: F(-1)},
}
_COMBINATION_LENGTH = {"Jprime-J": 4, "J-Jprime": 4, "2J-Tplus-Tminus": 4, "Gplus-Gminus": 3}


# ---------------------------------------------------------------------------
# Exact phi polynomials
# ---------------------------------------------------------------------------

def delta_coefficient(kind: ZeroKind, sigma: int) -> Fraction:
    """Coefficient of mu^(-sigma) in log(1 + c/mu) for the kind's constant c."""
    c = kind.c
    if c is None or c == 0:
        return F(0)
    return F((-1) ** (sigma + 1)) * c ** sigma / sigma


def _expansion_terms(kind: ZeroKind, order: int):
    if kind is ZeroKind.J:
        return [u_polynomial(k) for k in range(1, order + 1)]
    c = kind.c
    out = []
    for k in range(1, order + 1):
        shifted = _pmul({1: F(1)}, u_polynomial(k - 1))
        out.append(_padd(v_polynomial(k), _pscale(shifted, c)))
    return out


def phi_polynomial(kind: ZeroKind, sigma: int) -> AsymptoticPolynomial:
    """phi_sigma for a single kind of zeros, sigma >= 1, as exact rationals."""
    if not isinstance(kind, ZeroKind):
        kind = ZeroKind.parse(kind)
    if sigma < 1:
        raise UnsupportedError("phi_sigma is a polynomial only for sigma >= 1; see phi_minus1/phi_zero")
    L = log_series_coefficients(_expansion_terms(kind, sigma), sigma)[sigma - 1]
    poly = _pscale(L, F(-1))
    constant = -stirling_coefficient(sigma) + delta_coefficient(kind, sigma)
    poly[0] = poly.get(0, F(0)) + constant
    return AsymptoticPolynomial.from_p_powers(poly)


def phi_minus1(lam):
    """phi_{-1}(lambda) = 1 - sqrt(1-lambda) + log(1 + sqrt(1-lambda)) - log 2."""
    if isinstance(lam, complex):
        r = cmath.sqrt(1 - lam)
        return 1 - r + cmath.log(1 + r) - math.log(2.0)
    r = math.sqrt(1.0 - lam)
    return 1.0 - r + math.log1p(r) - math.log(2.0)


def phi_zero(kind: ZeroKind, lam):
    """phi_0(lambda): (1/4)log(1-lambda) for zeros of J, minus that otherwise."""
    if not isinstance(kind, ZeroKind):
        kind = ZeroKind.parse(kind)
    sign = 0.25 if kind is ZeroKind.J else -0.25
    if isinstance(lam, complex):
        return sign * cmath.log(1 - lam)
    return sign * math.log1p(-lam)


def _normalise_weights(combo) -> Dict[ZeroKind, Fraction]:
    if isinstance(combo, str):
        if combo not in COMBINATIONS:
            raise UnsupportedError(f"unsupported combination {combo!r}; known: {sorted(COMBINATIONS)}")
        return dict(COMBINATIONS[combo])
    out: Dict[ZeroKind, Fraction] = {}
    for kind, w in dict(combo).items():
        kind = kind if isinstance(kind, ZeroKind) else ZeroKind.parse(kind)
        out[kind] = out.get(kind, F(0)) + F(w)
    return out


def phi_combination(weights, sigma: int) -> AsymptoticPolynomial:
    """sum_kind weight * phi_sigma(kind) for a named or explicit combination."""
    total = AsymptoticPolynomial()
    for kind, w in _normalise_weights(weights).items():
        total = total + phi_polynomial(kind, sigma) * w
    return total


def phi_functions(spec_or_combination, h: int) -> AsymptoticPolynomial:
    """phi_h for a single sequence (spec or kind) or for a named combination.

    Combinations are ``"Jprime-J"``, ``"2J-Tplus-Tminus"`` and ``"Gplus-Gminus"``
    (and ``"J-Jprime"``, the negative of the first); ``h`` runs over
    1..length-1 of the decomposition.
    """
    if isinstance(spec_or_combination, ZeroSequenceSpec):
        if not 1 <= h <= spec_or_combination.length - 1:
            raise UnsupportedError(f"h must lie in 1..{spec_or_combination.length - 1}")
        return phi_polynomial(spec_or_combination.kind, h)
    if isinstance(spec_or_combination, ZeroKind):
        if not 1 <= h <= PHI_ORDER:
            raise UnsupportedError(f"h must lie in 1..{PHI_ORDER}")
        return phi_polynomial(spec_or_combination, h)
    if isinstance(spec_or_combination, str) and spec_or_combination in _COMBINATION_LENGTH:
        limit = _COMBINATION_LENGTH[spec_or_combination] - 1
        if not 1 <= h <= limit:
            raise UnsupportedError(f"h must lie in 1..{limit} for {spec_or_combination}")
    return phi_combination(spec_or_combination, h)


# ---------------------------------------------------------------------------
# Printed tables and their errata
# ---------------------------------------------------------------------------

def _P(*pairs, const=F(0)) -> AsymptoticPolynomial:
    """Build from (power of p, coefficient) pairs."""
    d = {m: F(c) for m, c in pairs}
    if const:
        d[0] = F(const)
    return AsymptoticPolynomial.from_p_powers(d)


REFERENCE_TABLES: Dict[str, AsymptoticPolynomial] = {
    "U1": _P((1, F(1, 8)), (3, F(-5, 24))),
    "U2": _P((2, F(9, 128)), (4, F(-77, 192)), (6, F(385, 1152))),
    "U3": _P((3, F(75, 1024)), (5, F(-4563, 5120)), (7, F(17017, 9216)), (9, F(-85085, 82944))),
    "V1": _P((1, F(-3, 8)), (3, F(7, 24))),
    "V2": _P((2, F(-15, 128)), (4, F(33, 64)), (6, F(-455, 1152))),
    "V3": _P((3, F(-105, 1024)), (5, F(5577, 5120)), (7, F(-6545, 3072)), (9, F(95095, 82944))),
    "W1+": _P((1, F(5, 8)), (3, F(7, 24))),
    "W2+": _P((2, F(-1, 128)), (4, F(59, 192)), (6, F(-455, 1152))),
    "W3+": _P((3, F(-33, 1024)), (5, F(10571, 15360)), (7, F(-16555, 9216)), (9, F(95095, 82944))),
    "W1-": _P((1, F(-11, 8)), (3, F(7, 24))),
    "W2-": _P((2, F(-31, 128)), (4, F(139, 192)), (6, F(-455, 1152))),
    "W3-": _P((3, F(-177, 1024)), (5, F(22891, 15360)), (7, F(-22715, 9216)), (9, F(95095, 82944))),
    "W1+half": _P((1, F(1, 8)), (3, F(7, 24))),
    "W2+half": _P((2, F(-7, 128)), (4, F(79, 192)), (6, F(-455, 1152))),
    "W1-half": _P((1, F(-7, 8)), (3, F(7, 24))),
    "W2-half": _P((2, F(-28, 128)), (4, F(119, 192)), (6, F(-455, 1152))),
    # derivative zeros minus zeros on U_1
    "PartI-1": _P((1, F(1, 2)), (3, F(-1, 2))),
    "PartI-2": _P((2, F(1, 4)), (4, F(-1)), (6, F(-3, 4))),
    "PartI-3": _P((3, F(11, 48)), (5, F(-35, 16)), (7, F(67, 16)), (9, F(-107, 48))),
    # zeros of J over U_0
    "phi1,0": _P((1, F(-1, 8)), (3, F(5, 24)), const=F(-1, 12)),
    "phi2,0": _P((2, F(-1, 16)), (4, F(3, 8)), (6, F(-5, 16))),
    "phi3,0": _P((3, F(-25, 384)), (5, F(531, 640)), (7, F(-221, 128)), (9, F(1105, 1152)), const=F(1, 360)),
    # zeros of +-J + zJ' over U_0
    "phi1,+": _P((1, F(-5, 8)), (3, F(-7, 24)), const=F(11, 12)),
    "phi1,-": _P((1, F(11, 8)), (3, F(-7, 24)), const=F(13, 12)),
    "phi2,+": _P((2, F(3, 16)), (4, F(-1, 8)), (6, F(7, 16)), const=F(-1, 2)),
    "phi2,-": _P((2, F(19, 16)), (4, F(-9, 8)), (6, F(7, 16)), const=F(-1, 2)),
    "phi3,+": _P((3, F(-17, 384)), (5, F(-389, 640)), (7, F(203, 128)), (9, F(-1463, 1152)), const=F(121, 360)),
    "phi3,-": _P((3, F(527, 384)), (5, F(-1989, 640)), (7, F(427, 128)), (9, F(-1463, 1152)), const=F(-119, 360)),
    # 2 J - (J + zJ') - (-J + zJ') over U_0
    "PartII-1": _P((1, F(-1)), (3, F(1))),
    "PartII-2": _P((2, F(-3, 2)), (4, F(2)), (6, F(-3, 2)), const=F(1)),
    "PartII-3": _P((3, F(-35, 24)), (5, F(43, 8)), (7, F(-67, 8)), (9, F(107, 24))),
    # (J/2 + zJ') minus (-J/2 + zJ') over the S^2 base
    "S2-2": _P((2, F(-1, 2)), (4, F(1, 2))),
}

# Printed entries that disagree with the exact derivation: key -> corrected value.
ERRATA: Dict[str, AsymptoticPolynomial] = {
    "W2+": _P((2, F(1, 128)), (4, F(59, 192)), (6, F(-455, 1152))),
    "W2-half": _P((2, F(-23, 128)), (4, F(119, 192)), (6, F(-455, 1152))),
    "PartI-2": _P((2, F(1, 4)), (4, F(-1)), (6, F(3, 4))),
    "phi1,-": _P((1, F(11, 8)), (3, F(-7, 24)), const=F(-13, 12)),
}


def reference_polynomial(key: str, corrected: bool = True) -> AsymptoticPolynomial:
    """A printed polynomial, with the erratum applied when ``corrected``."""
    if corrected and key in ERRATA:
        return ERRATA[key]
    return REFERENCE_TABLES[key]


def derived_polynomial(key: str) -> AsymptoticPolynomial:
    """The same object as ``REFERENCE_TABLES[key]`` recomputed from scratch."""
    from .specfun import uv_coefficients, w_coefficients

    if key[0] in "UV" and key[1:].isdigit():
        u, v = uv_coefficients(int(key[1:]))
        return u if key[0] == "U" else v
    if key.startswith("W"):
        k = int(key[1])
        sign = 1 if key[2] == "+" else -1
        weight = F(1, 2) if key.endswith("half") else F(1)
        return w_coefficients(k, sign, weight)
    if key.startswith("PartI-"):
        return phi_combination("Jprime-J", int(key[-1]))
    if key.startswith("PartII-"):
        return phi_combination("2J-Tplus-Tminus", int(key[-1]))
    if key == "S2-2":
        return phi_combination("Gplus-Gminus", 2)
    if key.startswith("phi"):
        sigma = int(key[3])
        kind = {"0": ZeroKind.J, "+": ZeroKind.Tplus, "-": ZeroKind.Tminus}[key[-1]]
        return phi_polynomial(kind, sigma)
    raise KeyError(key)


# ---------------------------------------------------------------------------
# Coefficient ledgers
# ---------------------------------------------------------------------------

# Above this order the Stirling and log(1 + c/mu) remainders come from their series.
SERIES_SWITCH_MU = 10.0
_REMAINDER_EXTRA_TERMS = 40


@dataclass(frozen=True)
class CoefficientLedger:
    """Large-lambda coefficients of log Gamma(-lambda, S_n/mu_n^2) for one kind.

    ``a00(n)`` is the constant term and ``a01(n)`` the coefficient of
    log(-lambda). ``b`` lists (sigma, b_{sigma,0,0}, b_{sigma,0,1}) for the
    poles sigma of zeta(s, U) only. Internally a00 is split as
    linear_coefficient * mu + smooth(mu), where smooth(mu) has the
    asymptotic series sum_k smooth_coefficient(k) mu^(-k).
    """

    kind: ZeroKind
    order_map: OrderMap
    b: Tuple[Tuple[int, Fraction, Fraction], ...]

    linear_coefficient = 1.0 - math.log(2.0)

    @property
    def c(self) -> Optional[Fraction]:
        return self.kind.c

    @property
    def a01_shift(self) -> Fraction:
        """a01 = mu/2 + a01_shift."""
        return F(1, 4) if self.kind is ZeroKind.J else F(-1, 4)

    def a00_mu(self, mu):
        mu = np.asarray(mu, dtype=float)
        base = 0.5 * LOG_2PI + (mu + 0.5) * np.log(mu) - mu * math.log(2.0) - _sp.gammaln(mu + 1.0)
        return base + self._delta(mu)

    def a01_mu(self, mu):
        return 0.5 * np.asarray(mu, dtype=float) + float(self.a01_shift)

    def a00(self, n):
        return self.a00_mu(self.order_map.value(n))

    def a01(self, n):
        return self.a01_mu(self.order_map.value(n))

    def _delta(self, mu):
        c = self.c
        if c is None or c == 0:
            return np.zeros_like(mu)
        return np.log1p(float(c) / mu)

    def smooth(self, mu):
        """a00(mu) - linear_coefficient*mu = -StirlingRemainder(mu) + log(1 + c/mu)."""
        mu = np.asarray(mu, dtype=float)
        return -stirling_remainder(mu) + self._delta(mu)

    def smooth_coefficient(self, k: int) -> Fraction:
        return -stirling_coefficient(k) + delta_coefficient(self.kind, k)

    def smooth_remainder(self, mu, K: int):
        """smooth(mu) - sum_{k<=K} smooth_coefficient(k) mu^(-k), without cancellation."""
        mu = np.atleast_1d(np.asarray(mu, dtype=float))
        out = np.empty_like(mu)
        big = mu >= SERIES_SWITCH_MU
        if np.any(big):
            m = mu[big]
            acc = np.zeros_like(m)
            for k in range(K + _REMAINDER_EXTRA_TERMS, K, -1):
                acc = (acc + float(self.smooth_coefficient(k))) / m
            out[big] = acc * m ** (-K)
        if np.any(~big):
            m = mu[~big]
            poly = np.zeros_like(m)
            for k in range(1, K + 1):
                poly += float(self.smooth_coefficient(k)) * m ** (-k)
            out[~big] = self.smooth(m) - poly
        return out


def ledger(spec: Union[ZeroSequenceSpec, Tuple[ZeroKind, OrderMap]]) -> CoefficientLedger:
    """Coefficient ledger of a double sequence; b entries only at poles of zeta(s, U)."""
    if isinstance(spec, ZeroSequenceSpec):
        kind, om = spec.kind, spec.order_map
    else:
        kind, om = spec
    if not isinstance(kind, ZeroKind):
        raise UnsupportedError(f"unsupported kind {kind!r}")
    b = []
    for sigma in om.poles:
        b00 = -stirling_coefficient(sigma) + delta_coefficient(kind, sigma)
        b.append((sigma, b00, F(0)))
    return CoefficientLedger(kind, om, tuple(b))


# ---------------------------------------------------------------------------
# Gamma functions of the single sequences
# ---------------------------------------------------------------------------

def _log_scaled_i(mu: float, x: complex):
    """log I_mu(x) for complex x, via the exponentially scaled value."""
    val = complex(_sp.ive(mu, x))
    if val == 0 or not cmath.isfinite(val):
        raise BesselOverflowError(f"I_{mu} at {x} is outside the double range")
    return cmath.log(val) + x


def _log_q(c: float, mu: float, x):
    """log(c I_mu(x) + x I_mu'(x)) for real or complex x."""
    if isinstance(x, complex):
        e_i = complex(_sp.ive(mu, x))
        e_ip = 0.5 * (complex(_sp.ive(mu - 1.0, x)) + complex(_sp.ive(mu + 1.0, x))) if mu > 0 else complex(_sp.ive(1.0, x))
        val = c * e_i + x * e_ip
        if val == 0 or not cmath.isfinite(val):
            raise BesselOverflowError(f"Bessel combination of order {mu} at {x} is outside the double range")
        return cmath.log(val) + x
    log_ip = log_bessel_i_prime(mu, x)
    if c == 0.0:
        return math.log(x) + log_ip
    ratio = math.exp(log_bessel_i(mu, x) - log_ip - math.log(x))
    return math.log(x) + log_ip + math.log1p(c * ratio)


def log_gamma_double(lam, n, spec: ZeroSequenceSpec):
    """log Gamma(-lambda, S_n/mu(n)^2) from the Bessel closed forms.

    Zeros of J give -log I_mu(mu z) + mu log z + mu log mu - mu log 2 -
    log Gamma(mu+1) with z = sqrt(-lambda) on the principal branch. Zeros of
    c J + z J' give -log(c I_mu(x) + x I_mu'(x)) + mu log(x/2) -
    log Gamma(mu+1) + log(mu + c) with x = mu z. Real negative lambda returns
    a float; other points off the cut return a complex number.
    """
    if isinstance(lam, complex) and lam.imag == 0.0:
        lam = lam.real
    if not isinstance(lam, complex):
        lam = float(lam)
        if lam >= 0.0:
            raise BranchError(f"lambda = {lam} lies on the cut [0, inf)")
    mu = float(spec.order_map.value(n))
    kind = spec.kind
    if isinstance(lam, complex):
        z = cmath.sqrt(-lam)
        log_z = cmath.log(z)
    else:
        z = math.sqrt(-lam)
        log_z = math.log(z)
    x = mu * z
    common = mu * log_z + mu * math.log(mu) - mu * math.log(2.0) - math.lgamma(mu + 1.0)
    if kind is ZeroKind.J:
        log_i = _log_scaled_i(mu, x) if isinstance(x, complex) else log_bessel_i(mu, x)
        return -log_i + common
    c = float(kind.c)
    return -_log_q(c, mu, x) + common + math.log(mu + c)


def expansion_check(spec: ZeroSequenceSpec, n, lam_grid: Iterable[float] = DEFAULT_LAMBDA_GRID) -> float:
    """max over the grid of |log Gamma - sum_{sigma=-1..3} phi_sigma mu^(-sigma)|."""
    mu = float(spec.order_map.value(n))
    polys = [phi_polynomial(spec.kind, s) for s in range(1, PHI_ORDER + 1)]
    worst = 0.0
    for lam in lam_grid:
        exact = log_gamma_double(lam, n, spec)
        approx = [phi_minus1(lam) * mu, phi_zero(spec.kind, lam)]
        approx += [poly(lam) * mu ** (-s) for s, poly in enumerate(polys, start=1)]
        worst = max(worst, abs(exact - math.fsum(approx)))
    return worst


def expansion_order(spec: ZeroSequenceSpec, n_small, n_large,
                    lam_grid: Iterable[float] = DEFAULT_LAMBDA_GRID) -> float:
    """Fitted exponent e in deviation ~ C mu^(-e) from two orders."""
    grid = tuple(lam_grid)
    d1 = expansion_check(spec, n_small, grid)
    d2 = expansion_check(spec, n_large, grid)
    m1 = float(spec.order_map.value(n_small))
    m2 = float(spec.order_map.value(n_large))
    return math.log(d1 / d2) / math.log(m2 / m1)
