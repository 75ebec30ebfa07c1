"""Special functions used by the torsion computations.

Gamma and digamma come from the standard library and scipy. Bessel values
are delegated to ``scipy.special`` (AMOS), which already switches internally
between power series and uniform asymptotics; the log-scaled modified Bessel
function falls back to Olver's uniform expansion once the scaled value
underflows.

The Hurwitz zeta function and its s-derivative are computed here by
Euler-Maclaurin summation, because scipy only covers ``Re s > 1`` and has no
derivative.

The uniform expansion polynomials U_k, V_k and W_k are stored as exact
rationals in ``p = (1 - lambda)^(-1/2)`` and produced by Olver's recursion.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Number
from typing import Dict, Iterable, Mapping, Tuple

import numpy as np
from scipy import special as _sp

from .errors import (
    BesselOverflowError,
    ConvergenceError,
    DomainError,
    PoleError,
    UnsupportedError,
)

EULER_GAMMA = 0.57721566490153286060651209008240243
LOG_2PI = math.log(2.0 * math.pi)

# Euler-Maclaurin settings for the Hurwitz zeta function.
EM_CORRECTIONS = 8
EM_MAX_CORRECTIONS = 40
EM_BASE_TERMS = 20
EM_SMALL_TERMS = 4

ZERO_MAX_ITER = 100


# ---------------------------------------------------------------------------
# Gamma, digamma, Bernoulli and Stirling numbers
# ---------------------------------------------------------------------------

def gamma(x):
    """Euler's Gamma function for real or complex ``x``.

    Raises :class:`PoleError` at the non-positive integers.
    """
    if isinstance(x, complex):
        if x.imag == 0.0 and x.real <= 0 and float(x.real).is_integer():
            raise PoleError(f"Gamma has a pole at {x}")
        return complex(_sp.gamma(x))
    x = float(x)
    if x <= 0 and x.is_integer():
        raise PoleError(f"Gamma has a pole at {x}")
    try:
        return math.gamma(x)
    except OverflowError:
        return math.inf


def digamma(x: float) -> float:
    """psi(x) = Gamma'(x)/Gamma(x) for real ``x`` off the poles."""
    x = float(x)
    if x <= 0 and x.is_integer():
        raise PoleError(f"digamma has a pole at {x}")
    return float(_sp.digamma(x))


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise DomainError("Bernoulli index must be non-negative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(n):
        acc += math.comb(n + 1, k) * bernoulli(k)
    return -acc / (n + 1)


def stirling_coefficient(k: int) -> Fraction:
    """Coefficient of mu^(-k) in log Gamma(mu+1) - (mu+1/2)log mu + mu - log(2 pi)/2."""
    if k < 1:
        raise DomainError("Stirling coefficients start at k = 1")
    if k % 2 == 0:
        return Fraction(0)
    m = (k + 1) // 2
    return bernoulli(2 * m) / (2 * m * (2 * m - 1))


def stirling_remainder(mu):
    """log Gamma(mu+1) - [(mu+1/2)log mu - mu + log(2 pi)/2], vectorised."""
    mu = np.asarray(mu, dtype=float)
    return _sp.gammaln(mu + 1.0) - ((mu + 0.5) * np.log(mu) - mu + 0.5 * LOG_2PI)


# ---------------------------------------------------------------------------
# Hurwitz and Riemann zeta functions
# ---------------------------------------------------------------------------

def _rising_and_derivative(s: float, n: int) -> Tuple[float, float]:
    """Return (s)_n = s(s+1)...(s+n-1) and its derivative in s."""
    value, deriv = 1.0, 0.0
    for i in range(n):
        f = s + i
        deriv = deriv * f + value
        value = value * f
    return value, deriv


def _tail_regular(t: float, L: float, order: int) -> float:
    """(exp(-t L) - 1)/t or its t-derivative, stable as t -> 0."""
    y = t * L
    if abs(y) < 0.1:
        terms = []
        power = 1.0  # t^(m - 1 - order) bookkeeping done through the loop
        for m in range(1 + order, 40):
            coef = (-L) ** m / math.factorial(m)
            if order == 0:
                terms.append(coef * t ** (m - 1))
            else:
                terms.append((m - 1) * coef * t ** (m - 2))
            power = abs(terms[-1])
            if m > 4 and power < 1e-30:
                break
        return math.fsum(terms)
    e = math.exp(-y)
    if order == 0:
        return (e - 1.0) / t
    return (-L * t * e - e + 1.0) / (t * t)


def _hurwitz(s: float, a: float, order: int, regular: bool) -> float:
    if not (a > 0):
        raise DomainError("Hurwitz zeta needs a > 0")
    s = float(s)
    if s == 1.0 and not regular:
        raise PoleError("zeta(s, a) has a pole at s = 1")
    # Few explicit terms for s < 1 keep the cancellation between the partial
    # sum and the tail small; the correction series is then run adaptively.
    if s >= 1:
        N = EM_BASE_TERMS + int(math.ceil(s))
    elif order == 0 and s <= 0 and s.is_integer():
        N = 1  # the correction series terminates, so fewer terms only help
    elif s >= 0:
        N = EM_BASE_TERMS // 2
    else:
        N = EM_SMALL_TERMS
    k = np.arange(N, dtype=float) + a
    logs = np.log(k)
    powers = np.exp(-s * logs)
    if order == 0:
        parts = list(powers)
    else:
        parts = list(-logs * powers)
    X = N + a
    LX = math.log(X)
    XS = math.exp(-s * LX)
    t = s - 1.0
    if regular:
        parts.append(_tail_regular(t, LX, order))
    elif order == 0:
        parts.append(X * XS / t)
    else:
        parts.append(-LX * X * XS / t - X * XS / (t * t))
    if order == 0:
        parts.append(0.5 * XS)
    else:
        parts.append(-0.5 * LX * XS)
    scale_ref = max(1.0, abs(math.fsum(parts)))
    previous = math.inf
    for j in range(1, EM_MAX_CORRECTIONS + 1):
        b = float(bernoulli(2 * j)) / math.factorial(2 * j)
        P, dP = _rising_and_derivative(s, 2 * j - 1)
        scale = XS * X ** (1 - 2 * j)
        term = b * P * scale if order == 0 else b * (dP - P * LX) * scale
        if abs(term) > previous and j > EM_CORRECTIONS:
            break  # the asymptotic series has started to diverge
        parts.append(term)
        if j >= EM_CORRECTIONS and abs(term) < 1e-18 * scale_ref:
            break
        if P == 0.0 and dP == 0.0:
            break  # s is a non-positive integer: the series has terminated
        previous = abs(term) if term != 0.0 else previous
    return math.fsum(parts)


def hurwitz_zeta(s: float, a: float = 1.0) -> float:
    """Analytically continued Hurwitz zeta function zeta(s, a), s != 1."""
    return _hurwitz(s, a, 0, False)


def hurwitz_zeta_deriv(s: float, a: float = 1.0) -> float:
    """d/ds zeta(s, a), s != 1."""
    return _hurwitz(s, a, 1, False)


def hurwitz_zeta_regular(s: float, a: float = 1.0, order: int = 0) -> float:
    """zeta(s, a) - 1/(s-1) (or its s-derivative when ``order=1``); entire in s.

    At s = 1 the value is -psi(a) and the derivative is the negated first
    generalised Stieltjes constant.
    """
    if order not in (0, 1):
        raise UnsupportedError("only order 0 and 1 are available")
    return _hurwitz(s, a, order, True)


def riemann_zeta(s: float) -> float:
    """Riemann zeta function, continued to s != 1."""
    return _hurwitz(s, 1.0, 0, False)


def riemann_zeta_deriv(s: float) -> float:
    """Derivative of the Riemann zeta function, s != 1."""
    return _hurwitz(s, 1.0, 1, False)


# ---------------------------------------------------------------------------
# Bessel functions
# ---------------------------------------------------------------------------

def _check_bessel_args(nu, x):
    if not (math.isfinite(nu) and nu >= 0):
        raise DomainError(f"Bessel order must be finite and >= 0, got {nu}")
    if not (math.isfinite(x) and x >= 0):
        raise DomainError(f"Bessel argument must be finite and >= 0, got {x}")


def bessel_j(nu: float, x: float) -> float:
    """J_nu(x) for nu >= 0, x >= 0."""
    _check_bessel_args(nu, x)
    return float(_sp.jv(nu, x))


def bessel_j_prime(nu: float, x: float) -> float:
    """J_nu'(x) for nu >= 0, x >= 0."""
    _check_bessel_args(nu, x)
    return float(_sp.jvp(nu, x))


def bessel_i(nu: float, x: float) -> float:
    """I_nu(x); raises :class:`BesselOverflowError` past the double range."""
    _check_bessel_args(nu, x)
    value = float(_sp.iv(nu, x))
    if not math.isfinite(value):
        raise BesselOverflowError(f"I_{nu}({x}) overflows; use log_bessel_i")
    return value


def bessel_i_prime(nu: float, x: float) -> float:
    """I_nu'(x); raises :class:`BesselOverflowError` past the double range."""
    _check_bessel_args(nu, x)
    value = float(_sp.ivp(nu, x))
    if not math.isfinite(value):
        raise BesselOverflowError(f"I'_{nu}({x}) overflows; use log_bessel_i_prime")
    return value


# Orders from which Olver's expansion is trusted when the scaled value underflows.
OLVER_MIN_ORDER = 20.0
_OLVER_TERMS = 10


def _olver_log_i(nu: float, x: float, derivative: bool) -> float:
    z = x / nu
    root = math.sqrt(1.0 + z * z)
    eta = root + math.log(z / (1.0 + root))
    p = 1.0 / root
    series = 1.0
    for k in range(1, _OLVER_TERMS + 1):
        poly = v_polynomial(k) if derivative else u_polynomial(k)
        series += _eval_dict(poly, p) / nu ** k
    base = nu * eta - 0.5 * math.log(2.0 * math.pi * nu)
    if derivative:
        return base + 0.25 * math.log1p(z * z) - math.log(z) + math.log(series)
    return base - 0.25 * math.log1p(z * z) + math.log(series)


def log_bessel_i(nu: float, x: float) -> float:
    """log I_nu(x) without overflow, usable for orders up to about 1e4.

    Uses the exponentially scaled scipy value when it is a normal double and
    Olver's uniform expansion (or the leading power-series term for small
    orders) once it underflows.
    """
    _check_bessel_args(nu, x)
    if x == 0.0:
        return 0.0 if nu == 0 else -math.inf
    scaled = float(_sp.ive(nu, x))
    if 1e-290 < scaled < math.inf:
        return math.log(scaled) + x
    if nu >= OLVER_MIN_ORDER:
        return _olver_log_i(nu, x, False)
    # tiny x with a moderate order: two terms of the power series are exact to double precision
    return nu * math.log(x / 2.0) - math.lgamma(nu + 1.0) + math.log1p(x * x / (4.0 * (nu + 1.0)))


def log_bessel_i_prime(nu: float, x: float) -> float:
    """log I_nu'(x) for nu > 0 or x > 0, without overflow."""
    _check_bessel_args(nu, x)
    if x == 0.0:
        if nu == 1.0:
            return math.log(0.5)
        return -math.inf
    scaled = float(_scaled_i_prime(nu, x))
    if 1e-290 < scaled < math.inf:
        return math.log(scaled) + x
    if nu >= OLVER_MIN_ORDER:
        return _olver_log_i(nu, x, True)
    if nu == 0.0:
        return log_bessel_i(1.0, x)
    return (nu - 1.0) * math.log(x / 2.0) - math.log(2.0) - math.lgamma(nu) + math.log1p(
        x * x * (nu + 2.0) / (4.0 * nu * (nu + 1.0))
    )


def _scaled_i_prime(nu, x):
    """exp(-x) I_nu'(x), vectorised."""
    if np.all(np.asarray(nu) == 0):
        return _sp.ive(1.0, x)
    return 0.5 * (_sp.ive(np.asarray(nu) - 1.0, x) + _sp.ive(np.asarray(nu) + 1.0, x))


# ---------------------------------------------------------------------------
# Zeros of Bessel-type functions
# ---------------------------------------------------------------------------

class ZeroKind(enum.Enum):
    """Which function's positive zeros a sequence is built from.

    ``Tplus``/``Tminus`` are the zeros of +-J_nu(z) + z J_nu'(z); ``Gplus`` and
    ``Gminus`` those of +-J_nu(z)/2 + z J_nu'(z).
    """

    J = "J"
    Jprime = "Jprime"
    Tplus = "Tplus"
    Tminus = "Tminus"
    Gplus = "Gplus"
    Gminus = "Gminus"

    @property
    def c(self):
        """The constant c in c*J_nu(z) + z*J_nu'(z), or None for plain J."""
        return _KIND_C[self]

    @classmethod
    def parse(cls, text: str) -> "ZeroKind":
        key = str(text).replace("_", "").replace("-", "").lower()
        for kind in cls:
            if kind.value.lower() == key:
                return kind
        raise UnsupportedError(f"unknown zero kind {text!r}")


_KIND_C = {
    ZeroKind.J: None,
    ZeroKind.Jprime: Fraction(0),
    ZeroKind.Tplus: Fraction(1),
    ZeroKind.Tminus: Fraction(-1),
    ZeroKind.Gplus: Fraction(1, 2),
    ZeroKind.Gminus: Fraction(-1, 2),
}


def zero_function(kind: ZeroKind, nu: float, z):
    """The function whose positive zeros ``find_zeros`` returns."""
    z = np.asarray(z, dtype=float)
    if kind is ZeroKind.J:
        return _sp.jv(nu, z)
    c = float(kind.c)
    return c * _sp.jv(nu, z) + z * _sp.jvp(nu, z)


def _zero_function_derivative(kind: ZeroKind, nu: float, z):
    if kind is ZeroKind.J:
        return _sp.jvp(nu, z)
    c = float(kind.c)
    # (cJ + zJ')' = cJ' + J' + zJ'' and zJ'' = -J' - (z - nu^2/z) J
    return c * _sp.jvp(nu, z) - (z - nu * nu / z) * _sp.jv(nu, z)


def _bessel_j_zeros(nu: float, count: int) -> np.ndarray:
    """First ``count`` positive zeros of J_nu by a unit-step sign scan.

    Consecutive zeros of J_nu are more than 3 apart for every nu >= 0, so a
    grid of spacing 1 isolates each zero in its own cell.
    """
    start = float(nu)
    span = (count + 0.5 * nu + 2.0) * math.pi + 10.0
    while True:
        grid = np.arange(start, start + span + 1.0, 1.0)
        values = _sp.jv(nu, grid)
        signs = np.sign(values)
        exact = grid[(signs == 0) & (grid > 0)]
        change = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
        if len(change) + len(exact) >= count:
            break
        span *= 2.0
    lo = grid[change]
    hi = grid[change + 1]
    roots = _refine(ZeroKind.J, nu, lo, hi, np.sign(values[change + 1]))
    roots = np.sort(np.concatenate([roots, exact]))
    return roots[:count]


def _refine(kind: ZeroKind, nu: float, lo, hi, sign_hi) -> np.ndarray:
    """Vectorised safeguarded Newton iteration with bisection fallback."""
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    sign_hi = np.array(sign_hi, dtype=float)
    x = 0.5 * (lo + hi)
    done = np.zeros(len(x), dtype=bool)
    for _ in range(ZERO_MAX_ITER):
        f = zero_function(kind, nu, x)
        scale = np.maximum(1.0, np.abs(x))
        small = np.abs(f) <= 1e-14 * scale
        done |= small & ((hi - lo) <= 1e-13 * scale)
        same = np.sign(f) == sign_hi
        hi = np.where(same & ~small, x, hi)
        lo = np.where(~same & ~small, x, lo)
        if np.all(done | small):
            # one more Newton polish for the ones flagged small
            df = _zero_function_derivative(kind, nu, x)
            step = np.where(df != 0, f / np.where(df == 0, 1.0, df), 0.0)
            cand = x - step
            ok = (cand > lo) & (cand < hi)
            x = np.where(ok, cand, x)
            break
        df = _zero_function_derivative(kind, nu, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            cand = x - f / df
        ok = np.isfinite(cand) & (cand > lo) & (cand < hi)
        x = np.where(ok, cand, 0.5 * (lo + hi))
        if np.all((hi - lo) <= 4e-16 * np.maximum(1.0, np.abs(hi))):
            break
    residual = np.abs(zero_function(kind, nu, x))
    bad = residual > 1e-12 * np.maximum(1.0, np.abs(x))
    if np.any(bad):
        raise ConvergenceError(
            f"zero refinement for {kind.value}, nu={nu} failed after {ZERO_MAX_ITER} iterations"
        )
    return x


def find_zeros(kind, nu: float, count: int) -> np.ndarray:
    """First ``count`` positive zeros of a Bessel-type function, increasing.

    For kind ``J`` these are j_{nu,k}. For the other kinds the target is
    c*J_nu(z) + z*J_nu'(z); its k-th zero lies between j_{nu,k-1} and j_{nu,k}
    (with j_{nu,0} = 0) because z J'/J decreases strictly between poles.
    Tminus needs nu > 1 and Gminus needs nu > 1/2; below that the function
    acquires a purely imaginary pair of zeros. For Jprime with nu = 0 the
    zero at the origin is skipped.
    """
    if not isinstance(kind, ZeroKind):
        kind = ZeroKind.parse(kind)
    nu = float(nu)
    if not (math.isfinite(nu) and nu >= 0):
        raise DomainError("order must be finite and >= 0")
    if int(count) != count or count < 1:
        raise DomainError("count must be a positive integer")
    count = int(count)
    if kind is ZeroKind.J:
        return _bessel_j_zeros(nu, count)
    c = float(kind.c)
    if kind is ZeroKind.Tminus and nu <= 1.0:
        raise DomainError("Tminus zeros need nu > 1")
    if kind is ZeroKind.Gminus and nu <= 0.5:
        raise DomainError("Gminus zeros need nu > 1/2")
    skip = c + nu == 0.0  # only Jprime at nu = 0 after the checks above
    jz = _bessel_j_zeros(nu, count + 1)
    bounds = np.concatenate([[0.0], jz])
    if skip:
        lo, hi = bounds[1 : count + 1], bounds[2 : count + 2]
    else:
        lo, hi = bounds[:count], bounds[1 : count + 1]
    sign_hi = np.sign(hi * _sp.jvp(nu, hi))
    return _refine(kind, nu, lo, hi, sign_hi)


# ---------------------------------------------------------------------------
# Exact polynomials in p and the AsymptoticPolynomial type
# ---------------------------------------------------------------------------

PolyDict = Dict[int, Fraction]


def _clean(d: Mapping[int, Fraction]) -> PolyDict:
    return {k: v for k, v in sorted(d.items()) if v != 0}


def _padd(a: Mapping[int, Fraction], b: Mapping[int, Fraction], sign: int = 1) -> PolyDict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + sign * v
    return _clean(out)


def _pmul(a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> PolyDict:
    out: Dict[int, Fraction] = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            out[ka + kb] = out.get(ka + kb, Fraction(0)) + va * vb
    return _clean(out)


def _pscale(a: Mapping[int, Fraction], c) -> PolyDict:
    return _clean({k: v * c for k, v in a.items()})


def _pderiv(a: Mapping[int, Fraction]) -> PolyDict:
    return _clean({k - 1: v * k for k, v in a.items() if k != 0})


def _eval_dict(a: Mapping[int, Fraction], p: float) -> float:
    return math.fsum(float(v) * p ** k for k, v in a.items())


@lru_cache(maxsize=None)
def _u_tuple(k: int) -> Tuple[Tuple[int, Fraction], ...]:
    if k == 0:
        return ((0, Fraction(1)),)
    prev = dict(_u_tuple(k - 1))
    # u_k = t^2 (1 - t^2) u_{k-1}'/2 + (1/8) int_0^t (1 - 5 s^2) u_{k-1}(s) ds
    first = _pscale(_pmul({2: Fraction(1), 4: Fraction(-1)}, _pderiv(prev)), Fraction(1, 2))
    integrand = _pmul({0: Fraction(1), 2: Fraction(-5)}, prev)
    integral = {m + 1: v / (m + 1) for m, v in integrand.items()}
    return tuple(_padd(first, _pscale(integral, Fraction(1, 8))).items())


def u_polynomial(k: int) -> PolyDict:
    """Olver's u_k(p) for any k >= 0, as {power of p: coefficient}."""
    if k < 0:
        raise UnsupportedError("order must be >= 0")
    return dict(_u_tuple(k))


def v_polynomial(k: int) -> PolyDict:
    """Olver's v_k(p), the derivative companion of u_k."""
    if k < 0:
        raise UnsupportedError("order must be >= 0")
    if k == 0:
        return {0: Fraction(1)}
    prev = u_polynomial(k - 1)
    inner = _padd(_pscale(prev, Fraction(1, 2)), _pmul({1: Fraction(1)}, _pderiv(prev)))
    corr = _pmul({3: Fraction(1), 1: Fraction(-1)}, inner)
    return _padd(u_polynomial(k), corr)


def _as_exact(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return value


@dataclass(frozen=True)
class AsymptoticPolynomial:
    """sum of coefficient*(1 - lam)^(-a) over ``terms`` plus ``constant``.

    With p = (1 - lam)^(-1/2) the exponent a corresponds to p^(2a), so the same
    type doubles as a polynomial in p. Exponents are kept distinct, sorted and
    with non-zero coefficients, so equality is structural.
    """

    terms: Tuple[Tuple[Fraction, object], ...] = ()
    constant: object = Fraction(0)

    def __post_init__(self):
        merged: Dict[Fraction, object] = {}
        for a, c in self.terms:
            a = Fraction(a)
            if a < 0:
                raise DomainError("exponents must be >= 0")
            if a == 0:
                object.__setattr__(self, "constant", _as_exact(self.constant) + _as_exact(c))
                continue
            merged[a] = merged.get(a, 0) + _as_exact(c)
        clean = tuple((a, merged[a]) for a in sorted(merged) if merged[a] != 0)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "constant", _as_exact(self.constant))

    # construction -----------------------------------------------------
    @classmethod
    def from_p_powers(cls, powers: Mapping[int, object]) -> "AsymptoticPolynomial":
        terms = [(Fraction(m, 2), c) for m, c in powers.items() if m != 0]
        return cls(tuple(terms), powers.get(0, Fraction(0)))

    def p_powers(self) -> PolyDict:
        out = {int(2 * a): c for a, c in self.terms}
        if self.constant != 0:
            out[0] = self.constant
        return dict(sorted(out.items()))

    # algebra ------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, AsymptoticPolynomial):
            return AsymptoticPolynomial(self.terms + other.terms, self.constant + other.constant)
        if isinstance(other, Number):
            return AsymptoticPolynomial(self.terms, self.constant + _as_exact(other))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return AsymptoticPolynomial(tuple((a, -c) for a, c in self.terms), -self.constant)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, AsymptoticPolynomial):
            return AsymptoticPolynomial.from_p_powers(_pmul(self.p_powers(), other.p_powers()))
        if isinstance(other, Number):
            other = _as_exact(other)
            return AsymptoticPolynomial(tuple((a, c * other) for a, c in self.terms), self.constant * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = AsymptoticPolynomial((), Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    # evaluation -----------------------------------------------------------
    def at_p(self, p):
        """Evaluate as a polynomial in p."""
        return sum(float(c) * p ** float(2 * a) for a, c in self.terms) + float(self.constant)

    def __call__(self, lam):
        """Evaluate at lam (real or complex, off the cut [1, inf))."""
        base = 1 - lam
        if isinstance(lam, complex) or np.iscomplexobj(lam):
            return sum(complex(float(c)) * np.power(complex(base), -float(a)) for a, c in self.terms) + float(
                self.constant
            )
        if base <= 0:
            raise DomainError("lam must be < 1 on the real axis")
        return math.fsum([float(c) * base ** (-float(a)) for a, c in self.terms] + [float(self.constant)])

    def is_exact(self) -> bool:
        return all(isinstance(c, Fraction) for _, c in self.terms) and isinstance(self.constant, Fraction)

    def __str__(self):
        parts = [f"{c}*(1-lam)^(-{a})" for a, c in self.terms]
        if self.constant != 0 or not parts:
            parts.append(str(self.constant))
        return " + ".join(parts)


def _poly(powers: Mapping[int, object]) -> AsymptoticPolynomial:
    return AsymptoticPolynomial.from_p_powers(powers)


def uv_coefficients(k: int) -> Tuple[AsymptoticPolynomial, AsymptoticPolynomial]:
    """(U_k, V_k) of the uniform expansions of I_nu(nu z) and I_nu'(nu z), k = 1..3."""
    if k not in (1, 2, 3):
        raise UnsupportedError(f"uv_coefficients supports k = 1..3, got {k}")
    return _poly(u_polynomial(k)), _poly(v_polynomial(k))


def w_coefficients(k: int, sign: int, weight=Fraction(1)) -> AsymptoticPolynomial:
    """W_{k,+-} = V_k +- weight * p * U_{k-1}, with U_0 = 1.

    ``weight`` 1 belongs to +-J + zJ' and weight 1/2 to +-J/2 + zJ'.
    """
    weight = Fraction(weight)
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    if weight == 1:
        allowed = (1, 2, 3)
    elif weight == Fraction(1, 2):
        allowed = (1, 2)
    else:
        raise UnsupportedError("weight must be 1 or 1/2")
    if k not in allowed:
        raise UnsupportedError(f"w_coefficients with weight {weight} supports k in {allowed}")
    return _poly(_w_dict(k, sign, weight))


def _w_dict(k: int, sign: int, weight: Fraction) -> PolyDict:
    shifted = _pmul({1: Fraction(1)}, u_polynomial(k - 1))
    return _padd(v_polynomial(k), _pscale(shifted, sign * weight))


def log_series_coefficients(coeffs: Iterable[PolyDict], order: int) -> list:
    """Coefficients L_1..L_order of log(1 + sum_k X_k t^k) for polynomial X_k.

    Uses k L_k = k X_k - sum_{j<k} j L_j X_{k-j}.
    """
    X = list(coeffs)
    L: list = []
    for k in range(1, order + 1):
        acc = _pscale(X[k - 1], k) if k - 1 < len(X) else {}
        for j in range(1, k):
            if k - j - 1 < len(X):
                acc = _padd(acc, _pscale(_pmul(L[j - 1], X[k - j - 1]), j), -1)
        L.append(_pscale(acc, Fraction(1, k)))
    return L
