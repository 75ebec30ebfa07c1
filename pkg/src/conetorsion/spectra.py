"""Sphere spectra, order maps and the zeta functions built on them.

Every zeta function here is reduced to Hurwitz zeta functions. With
m = n + 1 (S^3) or m = n + 1/2 (S^2) the eigenvalues take the form
m^2 + d, and a binomial expansion gives

    sum_m mult(m) (m^2 + d)^(-x/2) = sum_j C(-x/2, j) d^j sum_m mult(m) m^(-x-2j),

which converges geometrically because |d| < m^2 on the whole range. The
same expansion yields Laurent coefficients at the poles, so residues and
finite parts come out of one routine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np

from .errors import DomainError, PoleError, UnsupportedError
from .specfun import (
    ZeroKind,
    hurwitz_zeta,
    hurwitz_zeta_deriv,
    hurwitz_zeta_regular,
    log_bessel_i,
)
from .values import Laurent, MeromorphicValue

_SERIES_MAX_TERMS = 2000
_SERIES_RTOL = 1e-18


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConeGeometry:
    """The cone C_alpha S^n of angle ``alpha`` and length ``length``.

    ``a = sin(alpha)`` is the radius scale of the boundary sphere and
    ``nu = 1/a``; alpha = pi/2 is the flat disc (or ball), where nu = 1.
    """

    dim: int
    alpha: float
    length: float = 1.0

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise UnsupportedError(f"sphere dimension must be 1, 2 or 3, got {self.dim}")
        alpha = float(self.alpha)
        if not (math.isfinite(alpha) and 0.0 < alpha <= math.pi / 2):
            raise DomainError(f"alpha must lie in (0, pi/2], got {self.alpha}")
        length = float(self.length)
        if not (math.isfinite(length) and length > 0.0):
            raise DomainError(f"length must be positive and finite, got {self.length}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "length", length)

    @classmethod
    def from_degrees(cls, dim: int, alpha_deg: float, length: float = 1.0) -> "ConeGeometry":
        return cls(dim, math.radians(alpha_deg), length)

    @property
    def a(self) -> float:
        return math.sin(self.alpha)

    @property
    def nu(self) -> float:
        return 1.0 / self.a

    @property
    def volume(self) -> float:
        a, l = self.a, self.length
        if self.dim == 1:
            return math.pi * l ** 2 * a
        if self.dim == 2:
            return 4.0 * math.pi * l ** 3 * a ** 2 / 3.0
        return math.pi ** 2 * l ** 4 * a ** 3 / 2.0


# ---------------------------------------------------------------------------
# Sphere spectra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SphereSpectrum:
    """Coexact eigenvalue families of a round sphere, indexed by n >= 1."""

    dim: int
    families: Tuple[Tuple[int, Callable[[int], float], Callable[[int], int]], ...]

    @classmethod
    def coexact(cls, dim: int) -> "SphereSpectrum":
        if dim == 3:
            return cls(
                3,
                (
                    (0, lambda n: n * (n + 2), lambda n: (n + 1) ** 2),
                    (1, lambda n: (n + 1) ** 2, lambda n: 2 * n * (n + 2)),
                    (2, lambda n: n * (n + 2), lambda n: (n + 1) ** 2),
                ),
            )
        if dim == 2:
            return cls(2, ((0, lambda n: n * (n + 1), lambda n: 2 * n + 1),))
        if dim == 1:
            return cls(1, ((0, lambda n: n * n, lambda n: 2),))
        raise UnsupportedError(f"no sphere table for dimension {dim}")


# ---------------------------------------------------------------------------
# Laurent machinery for binomial-Hurwitz series
# ---------------------------------------------------------------------------

def _binom_taylor(x0: float, j: int) -> Tuple[float, float, float]:
    """Taylor coefficients in h of C(-(x0+h)/2, j) up to h^2."""
    c0, c1, c2 = 1.0, 0.0, 0.0
    y0 = -0.5 * x0
    for i in range(j):
        f0 = y0 - i  # factor (f0 - h/2)
        c0, c1, c2 = c0 * f0, c1 * f0 - 0.5 * c0, c2 * f0 - 0.5 * c1
    fact = float(math.factorial(j))
    return c0 / fact, c1 / fact, c2 / fact


def _nu_power_taylor(nu: float, x0: float) -> Tuple[float, float, float]:
    """Taylor coefficients of nu^(-(x0+h)) up to h^2."""
    base = nu ** (-x0)
    L = math.log(nu)
    return base, -base * L, base * L * L / 2.0


def _hurwitz_laurent(sigma: float, a: float, x0: float) -> Laurent:
    """Laurent expansion of zeta_H(sigma + h, a) about h = 0."""
    if sigma == 1.0:
        return Laurent(1.0, hurwitz_zeta_regular(1.0, a), hurwitz_zeta_regular(1.0, a, order=1), x0)
    return Laurent(0.0, hurwitz_zeta(sigma, a), hurwitz_zeta_deriv(sigma, a), x0)


def binomial_hurwitz_laurent(x0: float, d: float, c: int, a: float) -> Laurent:
    """Laurent expansion at x0 of sum_j C(-x/2, j) d^j zeta_H(x + 2j - c, a)."""
    total = Laurent(0.0, 0.0, 0.0, x0)
    quiet = 0
    for j in range(_SERIES_MAX_TERMS):
        weight = d ** j if j else 1.0
        b0, b1, b2 = _binom_taylor(x0, j)
        if weight == 0.0:
            break
        if b0 == 0.0 and b1 == 0.0 and b2 == 0.0:
            continue
        term = _hurwitz_laurent(x0 + 2 * j - c, a, x0).times_taylor(weight * b0, weight * b1, weight * b2)
        total = total + term
        size = max(abs(term.c_m1), abs(term.c0), abs(term.c1))
        scale = max(1.0, abs(total.c0), abs(total.c1))
        quiet = quiet + 1 if size < _SERIES_RTOL * scale else 0
        if quiet >= 3:
            return total
    if d == 0.0 or abs(d) < 1e-300:
        return total
    raise DomainError("binomial Hurwitz series did not converge; the shift is too large")


# ---------------------------------------------------------------------------
# Order maps and the base zeta functions zeta(x, U)
# ---------------------------------------------------------------------------

_ORDER_KINDS = ("mu0", "mu1", "muS2", "muS1")


@dataclass(frozen=True)
class OrderMap:
    """n -> mu(n) together with the base multiplicity of the sequence U.

    ``mu0``: sqrt(nu^2 n(n+2) + 1), multiplicity (n+1)^2 (S^3 exact part).
    ``mu1``: nu(n+1), multiplicity n(n+2) (S^3 coexact one-forms).
    ``muS2``: sqrt(nu^2 n(n+1) + 1/4), multiplicity 2n+1.
    ``muS1``: nu n, multiplicity 1.
    """

    kind: str
    nu: float

    def __post_init__(self):
        if self.kind not in _ORDER_KINDS:
            raise UnsupportedError(f"unknown order map {self.kind!r}")
        if not (math.isfinite(self.nu) and self.nu >= 1.0):
            raise DomainError(f"order maps need nu >= 1, got {self.nu}")

    def value(self, n):
        n = np.asarray(n, dtype=float)
        nu = self.nu
        if self.kind == "mu0":
            return np.sqrt(nu * nu * n * (n + 2.0) + 1.0)
        if self.kind == "mu1":
            return nu * (n + 1.0)
        if self.kind == "muS2":
            return np.sqrt(nu * nu * n * (n + 1.0) + 0.25)
        return nu * n

    __call__ = value

    def base_multiplicity(self, n):
        n = np.asarray(n, dtype=float)
        if self.kind == "mu0":
            return (n + 1.0) ** 2
        if self.kind == "mu1":
            return n * (n + 2.0)
        if self.kind == "muS2":
            return 2.0 * n + 1.0
        return np.ones_like(n)

    @property
    def poles(self) -> Tuple[int, ...]:
        """Positive poles of x -> zeta(x, U)."""
        return {"mu0": (1, 3), "mu1": (1, 3), "muS2": (2,), "muS1": (1,)}[self.kind]

    def zeta_laurent(self, x0: float) -> Laurent:
        """Laurent expansion of zeta(x, U) = sum mult(n) mu(n)^(-x) about x0."""
        x0 = float(x0)
        nu = self.nu
        t = _nu_power_taylor(nu, x0)
        if self.kind == "muS1":
            core = _hurwitz_laurent(x0, 1.0, x0)
        elif self.kind == "mu1":
            core = _hurwitz_laurent(x0 - 2.0, 1.0, x0) - _hurwitz_laurent(x0, 1.0, x0)
        elif self.kind == "mu0":
            core = binomial_hurwitz_laurent(x0, 1.0 / nu ** 2 - 1.0, 2, 2.0)
        else:
            core = binomial_hurwitz_laurent(x0, 1.0 / (4.0 * nu ** 2) - 0.25, 1, 1.5).scale(2.0)
        return core.times_taylor(*t)

    def zeta(self, x: float) -> float:
        lau = self.zeta_laurent(x)
        if lau.c_m1 != 0.0:
            raise PoleError(f"zeta(x, U) for {self.kind} has a pole at x = {x}")
        return lau.c0

    def zeta_deriv(self, x: float) -> float:
        lau = self.zeta_laurent(x)
        if lau.c_m1 != 0.0:
            raise PoleError(f"zeta(x, U) for {self.kind} has a pole at x = {x}")
        return lau.c1


def zeta_U1(s: float, nu: float) -> float:
    """zeta(s, U_1) = nu^(-s) (zeta_R(s-2) - zeta_R(s)), s not in {1, 3}."""
    if s in (1, 3):
        raise PoleError(f"zeta(s, U_1) has a pole at s = {s}")
    return OrderMap("mu1", nu).zeta(s)


def residues_U1(nu: float) -> List[MeromorphicValue]:
    """Residue and finite part of zeta(s, U_1) at s = 1 and s = 3."""
    om = OrderMap("mu1", nu)
    return [om.zeta_laurent(s0).meromorphic() for s0 in (1.0, 3.0)]


def _sphere_check_shift(q: float, upper: float) -> None:
    if not (math.isfinite(q) and 0.0 <= q < upper):
        raise DomainError(f"shift q must lie in [0, {upper}), got {q}")


def zeta_sphere3_laurent(s0: float, q: float = 0.0) -> Laurent:
    """Laurent expansion in s of sum (n+1)^2 (n(n+2) + q)^(-s)."""
    _sphere_check_shift(q, 3.0)
    lau = binomial_hurwitz_laurent(2.0 * s0, q - 1.0, 2, 2.0)
    # the series is in x = 2s: residues halve and derivatives double
    return Laurent(lau.c_m1 / 2.0, lau.c0, 2.0 * lau.c1, s0)


def zeta_sphere3(s: float, q: float = 0.0) -> float:
    """zeta(s, Sp_+ Delta_{S^3} + q) on coexact-type eigenvalues n(n+2), multiplicity (n+1)^2."""
    lau = zeta_sphere3_laurent(s, q)
    if lau.c_m1 != 0.0:
        raise PoleError(f"zeta(s, S^3 + q) has a pole at s = {s}")
    return lau.c0


def zeta_Lq_laurent(s0: float, q: float = 0.0) -> Laurent:
    """Laurent expansion of zeta(s, L_q), the square-root version, about s0."""
    _sphere_check_shift(q, 3.0)
    return binomial_hurwitz_laurent(s0, q - 1.0, 2, 2.0)


def zeta_Lq(s: float, q: float = 0.0) -> float:
    """zeta(s, L_q) = zeta(s/2, Sp_+ Delta_{S^3} + q); poles at s = 3 and s = 1."""
    lau = zeta_Lq_laurent(s, q)
    if lau.c_m1 != 0.0:
        raise PoleError(f"zeta(s, L_q) has a pole at s = {s}")
    return lau.c0


def zeta_sphere2_laurent(s0: float, q: float = 0.0) -> Laurent:
    """Laurent expansion in s of sum (2n+1) (n(n+1) + q)^(-s)."""
    _sphere_check_shift(q, 2.0)
    lau = binomial_hurwitz_laurent(2.0 * s0, q - 0.25, 1, 1.5).scale(2.0)
    return Laurent(lau.c_m1 / 2.0, lau.c0, 2.0 * lau.c1, s0)


def zeta_sphere2(s: float, q: float = 0.0) -> float:
    """zeta(s, Sp_+ Delta^(0)_{S^2} + q); the only pole is s = 1 with residue 1."""
    lau = zeta_sphere2_laurent(s, q)
    if lau.c_m1 != 0.0:
        raise PoleError(f"zeta(s, S^2 + q) has a pole at s = {s}")
    return lau.c0


def laurent_fit_residue(func: Callable[[float], float], s0: float,
                        steps: Sequence[float] = (1e-2, 5e-3, 2.5e-3)) -> float:
    """Numeric residue of ``func`` at s0 from (s - s0) func(s), Richardson-extrapolated.

    Symmetric averaging removes odd powers of the step, so the estimates are
    in h^2 and two Richardson rounds leave an O(h^6) error.
    """
    est = []
    for h in steps:
        est.append(0.5 * (h * func(s0 + h) - h * func(s0 - h)))
    level = est
    power = 4.0
    while len(level) > 1:
        level = [(power * level[i + 1] - level[i]) / (power - 1.0) for i in range(len(level) - 1)]
        power *= 4.0
    return level[0]


# ---------------------------------------------------------------------------
# Fixed-order quadratic Bessel zeta at s = 0
# ---------------------------------------------------------------------------

Q_LIMIT_SWITCH = 1e-8


def bessel_quadratic_zeta_at0(nu: float, q: float = 0.0, l: float = 1.0) -> Tuple[float, float]:
    """(z(0), z'(0)) for the sequence {j_{nu,k}^2/l^2 + q^2}.

    z(0) = -(nu + 1/2)/2 and z'(0) = -log(sqrt(2 pi l) I_nu(l q)/q^nu); the
    q -> 0 limit -log(sqrt(pi) l^(nu+1/2)/(2^(nu-1/2) Gamma(nu+1))) is used
    once l*q drops below ``Q_LIMIT_SWITCH``. Order 0 is allowed because the
    cone over S^1 contains the j_{0,k} family.
    """
    if not (math.isfinite(nu) and nu >= 0.0):
        raise DomainError(f"order must be >= 0, got {nu}")
    if not (math.isfinite(l) and l > 0.0):
        raise DomainError(f"l must be positive, got {l}")
    if not (math.isfinite(q) and q >= 0.0):
        raise DomainError(f"q must be >= 0, got {q}")
    z0 = -(nu + 0.5) / 2.0
    if l * q < Q_LIMIT_SWITCH:
        z1 = -(0.5 * math.log(math.pi) + (nu + 0.5) * math.log(l)
               - (nu - 0.5) * math.log(2.0) - math.lgamma(nu + 1.0))
    else:
        z1 = -(0.5 * math.log(2.0 * math.pi * l) + log_bessel_i(nu, l * q) - nu * math.log(q))
    return z0, z1


# ---------------------------------------------------------------------------
# Spectrum tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZeroSequenceSpec:
    """A double family {mult(n) : z_{mu(n),k}^2 / l^2} of Bessel-type zeros.

    The family multiplicity is ``factor`` times the base multiplicity of the
    order map, so the base sequence U is shared by all families over it.
    """

    kind: ZeroKind
    order_map: OrderMap
    factor: int = 1
    scale: float = 1.0
    kappa: int = 2
    length: int = 4

    def multiplicity(self, n):
        return self.factor * self.order_map.base_multiplicity(n)


@dataclass(frozen=True)
class SimpleFamily:
    """{j_{order,k}^2/l^2}: a fixed-order family of Bessel zeros."""

    order: Fraction
    scale: float = 1.0


@dataclass(frozen=True)
class SpectrumDegree:
    degree: int
    simple: Tuple[SimpleFamily, ...] = ()
    double: Tuple[ZeroSequenceSpec, ...] = field(default_factory=tuple)


_DECOMP_LENGTH = {1: 2, 2: 3, 3: 4}


def spectrum_tables(dim: int, geometry: ConeGeometry) -> Dict[int, SpectrumDegree]:
    """Eigenvalue families of the form Laplacians on the cone, by form degree.

    Absolute boundary conditions. In degree 4 on the cone over S^3 the
    double family uses zeros of J itself, which is what the torsion assembly
    needs. In degree 2 on the cone over S^2 the family of zeros of J
    appears twice; with both copies the J weights cancel in the torsion sum.
    """
    if dim not in (1, 2, 3):
        raise UnsupportedError(f"dimension must be 1, 2 or 3, got {dim}")
    if geometry.dim != dim:
        raise DomainError(f"geometry has dimension {geometry.dim}, expected {dim}")
    nu, l = geometry.nu, geometry.length
    ell = _DECOMP_LENGTH[dim]
    J, Jp = ZeroKind.J, ZeroKind.Jprime

    def simple(order) -> SimpleFamily:
        return SimpleFamily(Fraction(order), l)

    def double(kind, om, factor=1) -> ZeroSequenceSpec:
        return ZeroSequenceSpec(kind, om, factor, l, 2, ell)

    if dim == 1:
        u = OrderMap("muS1", nu)
        table = {
            0: ((simple(1),), (double(Jp, u, 2),)),
            1: ((simple(0), simple(1)), (double(J, u, 2), double(Jp, u, 2))),
            2: ((simple(0),), (double(J, u, 2),)),
        }
    elif dim == 2:
        u = OrderMap("muS2", nu)
        half, three_half = Fraction(1, 2), Fraction(3, 2)
        table = {
            0: ((simple(three_half),), (double(ZeroKind.Gminus, u),)),
            1: ((simple(three_half),), (double(J, u), double(ZeroKind.Gplus, u), double(ZeroKind.Gminus, u))),
            2: ((simple(half),), (double(J, u), double(ZeroKind.Gplus, u), double(J, u))),
            3: ((simple(half),), (double(J, u),)),
        }
    else:
        u0, u1 = OrderMap("mu0", nu), OrderMap("mu1", nu)
        table = {
            0: ((simple(2),), (double(ZeroKind.Tminus, u0),)),
            1: ((simple(2),), (double(Jp, u1, 2), double(ZeroKind.Tminus, u0), double(J, u0))),
            2: ((), (double(ZeroKind.Tplus, u0), double(Jp, u1, 2), double(J, u1, 2), double(J, u0))),
            3: ((simple(1),), (double(ZeroKind.Tplus, u0), double(J, u0), double(J, u1, 2))),
            4: ((simple(1),), (double(J, u0),)),
        }
    return {q: SpectrumDegree(q, s, d) for q, (s, d) in table.items()}
