"""Spectral decomposition engine.

Given a weighted combination of double sequences over one base sequence
U = {mult(n): mu(n)}, this module computes zeta(0) and zeta'(0) of the
combination with power kappa = 2:

    zeta(0)  = -A01(0) + (1/2) sum_P Res Phi_s * Res zeta(., U)|_s
    zeta'(0) = -A00(0) - A01'(0) + (gamma/2) sum_P Res Phi_s * Res zeta|_s
               + (1/2) sum_P FP Phi_s * Res zeta|_s + sum_P Res Phi_s * FP zeta|_s

where P is the set of positive poles of zeta(s, U), Phi_s is the Mellin
image of phi_s and FP denotes a finite part. The weights must sum to zero,
which removes the parts of the large-lambda coefficients that grow linearly
in mu. A00 is continued to s = 0 by subtracting K terms of its large-mu
series, summing those in closed form through zeta(k, U) and summing the
remainder directly.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, special as _sp

from .besselseq import ledger, phi_combination
from .errors import ConvergenceError, DomainError, InsufficientTruncationError, UnsupportedError
from .specfun import EULER_GAMMA, AsymptoticPolynomial, ZeroKind
from .spectra import ZeroSequenceSpec
from .values import ExactConstant, MeromorphicValue

DEFAULT_TRUNCATION = 2000
MIN_TRUNCATION = 100
SERIES_TERMS_K = 9
CHUNK_SIZE = 500


# ---------------------------------------------------------------------------
# Mellin map of the phi polynomials
# ---------------------------------------------------------------------------

def exact_digamma(a: Fraction) -> ExactConstant:
    """psi(a) for a positive integer or half-integer, as rational + gamma + log 2 parts."""
    a = Fraction(a)
    if a <= 0 or (2 * a).denominator != 1:
        raise UnsupportedError(f"exact digamma needs a positive integer or half-integer, got {a}")
    if a.denominator == 1:
        n = int(a)
        return ExactConstant(sum((Fraction(1, k) for k in range(1, n)), Fraction(0)), Fraction(-1))
    n = int(a - Fraction(1, 2))
    harmonic = sum((Fraction(2, 2 * k - 1) for k in range(1, n + 1)), Fraction(0))
    return ExactConstant(harmonic, Fraction(-1), Fraction(-2))


@dataclass(frozen=True)
class PhiTransform:
    """sum coefficient * Gamma(s + a)/(Gamma(a) s) over ``terms``."""

    terms: Tuple[Tuple[Fraction, Fraction], ...]

    def value(self, s: float) -> float:
        if s == 0:
            raise DomainError("Phi has a (possibly removable) singularity at s = 0; use phi_at_zero")
        return math.fsum(
            float(c) * math.exp(_sp.gammaln(s + float(a)) - _sp.gammaln(float(a))) / s for c, a in self.terms
        )

    @property
    def exact_residue(self) -> Fraction:
        return sum((Fraction(c) for c, _ in self.terms), Fraction(0))

    @property
    def exact_finite_part(self) -> ExactConstant:
        total = ExactConstant()
        for c, a in self.terms:
            total = total + exact_digamma(a) * Fraction(c)
        return total


def phi_mellin(poly: AsymptoticPolynomial, drop_constant: bool = False) -> PhiTransform:
    """Term-by-term Mellin image c (1-lam)^(-a) -> c Gamma(s+a)/(Gamma(a) s).

    A non-zero constant term has no image of this form; it raises unless
    ``drop_constant`` is set, in which case it is ignored.
    """
    if poly.constant != 0 and not drop_constant:
        raise DomainError(f"phi has a non-zero constant term {poly.constant}; the Mellin formula needs a > 0")
    return PhiTransform(tuple((Fraction(c), Fraction(a)) for a, c in poly.terms))


def phi_at_zero(phi: PhiTransform) -> MeromorphicValue:
    """Residue and finite part at s = 0. Each term has at most a simple pole there."""
    return MeromorphicValue(float(phi.exact_residue), float(phi.exact_finite_part), 0.0)


# ---------------------------------------------------------------------------
# Contour check of the Mellin formula
# ---------------------------------------------------------------------------

def _inner_contour(t: float, a: float, theta: float, c: float) -> float:
    """(1/2 pi i) int_Lambda e^(-lam t)/(-lam) (1-lam)^(-a) dlam on the truncated contour.

    The contour is the pair of rays lam = c + r e^(+-i theta/2), r in [0, 50/t],
    traversed so that it winds positively around the cut [1, inf). By
    conjugate symmetry the two rays combine into Im(ray integral)/pi.
    """
    ray = complex(math.cos(theta / 2), -math.sin(theta / 2))
    R = 50.0 / t

    def f(r: float) -> float:
        lam = c + r * ray
        val = np.exp(-lam * t) / (-lam) * (1 - lam) ** (-a) * ray
        return val.imag

    total = 0.0
    # geometric breakpoints keep quad accurate for the slowly decaying tail
    edges = [0.0]
    e = 1.0
    while e < R:
        edges.append(e)
        e *= 4.0
    edges.append(R)
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(f, lo, hi, limit=200, epsabs=1e-14, epsrel=1e-11)
        total += val
    return total / math.pi


def contour_integral_check(s: float, a: float, theta: float = math.pi / 2, c: float = 0.5) -> float:
    """Numeric value of int_0^inf t^(s-1) (1/2 pi i) int_Lambda ... dlam dt.

    Used only for verification; it should reproduce Gamma(s+a)/(Gamma(a) s).
    """
    if not (0 < s < 2 and a > 0 and 0 < theta < math.pi and 0 < c < 1):
        raise DomainError("need 0 < s < 2, a > 0, 0 < theta < pi, 0 < c < 1")
    inner = lambda t: _inner_contour(t, a, theta, c)
    # on (0, 1) substitute t = u^(1/s) so that t^(s-1) dt = du/s
    head, err1 = integrate.quad(lambda u: inner(u ** (1.0 / s)) / s, 0.0, 1.0, limit=100, epsrel=1e-9)
    upper = 60.0 + 2.0 * a
    tail, err2 = integrate.quad(lambda t: t ** (s - 1.0) * inner(t), 1.0, upper, limit=100, epsrel=1e-9)
    if not (math.isfinite(head) and math.isfinite(tail)):
        raise ConvergenceError("contour quadrature failed")
    return head + tail


# ---------------------------------------------------------------------------
# A-sums and the combination zeta
# ---------------------------------------------------------------------------

def thread_count() -> int:
    """Worker threads for the A-sums; CONETORSION_THREADS caps the default."""
    raw = os.environ.get("CONETORSION_THREADS")
    default = min(4, os.cpu_count() or 1)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"CONETORSION_THREADS must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise DomainError(f"CONETORSION_THREADS must be a positive integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class CombinationResult:
    """zeta(0) and zeta'(0) of a weighted combination, with the pieces used."""

    value: float
    deriv: float
    tail_estimate: float
    truncation: int
    a00: float
    a01: float
    a01_deriv: float
    pole_terms: Dict[int, Tuple[MeromorphicValue, MeromorphicValue]] = field(default_factory=dict)


def _normalise(combination) -> List[Tuple[Fraction, ZeroSequenceSpec]]:
    out = []
    for weight, spec in combination:
        if not isinstance(spec, ZeroSequenceSpec):
            raise UnsupportedError("combination entries must be (weight, ZeroSequenceSpec)")
        out.append((Fraction(weight) * spec.factor, spec))
    if not out:
        raise UnsupportedError("empty combination")
    om = out[0][1].order_map
    for _, spec in out:
        if spec.order_map != om:
            raise UnsupportedError("all sequences in a combination must share the order map")
    return out


def combination_weights(combination) -> Dict[ZeroKind, Fraction]:
    """Per-kind weights relative to the base multiplicity."""
    weights: Dict[ZeroKind, Fraction] = {}
    for w, spec in _normalise(combination):
        weights[spec.kind] = weights.get(spec.kind, Fraction(0)) + w
    return {k: w for k, w in weights.items() if w != 0}


def zeta_zero_and_deriv(combination, truncation: int = DEFAULT_TRUNCATION,
                        tolerance: Optional[float] = None,
                        progress: Optional[Callable[[int, int], None]] = None) -> CombinationResult:
    """zeta(0) and zeta'(0) of sum_i weight_i * zeta(s, S_i) for (weight, spec) pairs.

    The direct part of A00 is summed up to n = 2N; ``tail_estimate`` is the
    change between N and 2N. ``tolerance`` turns a larger change into an
    :class:`InsufficientTruncationError`.
    """
    if int(truncation) != truncation or truncation < MIN_TRUNCATION:
        raise DomainError(f"truncation must be an integer >= {MIN_TRUNCATION}")
    truncation = int(truncation)
    weights = combination_weights(combination)
    om = _normalise(combination)[0][1].order_map
    if sum(weights.values(), Fraction(0)) != 0:
        raise UnsupportedError("combination weights must sum to zero for the linear terms to cancel")
    ledgers = {kind: ledger((kind, om)) for kind in weights}

    # log-coefficient sum: the mu/2 parts cancel, the shifts remain
    c01 = sum((w * ledgers[k].a01_shift for k, w in weights.items()), Fraction(0))
    at0 = om.zeta_laurent(0.0)
    a01 = float(c01) * at0.c0
    a01_deriv = 2.0 * float(c01) * at0.c1

    # closed-form part of A00
    K = SERIES_TERMS_K
    closed = []
    for k in range(1, K + 1):
        g = sum((w * ledgers[kind].smooth_coefficient(k) for kind, w in weights.items()), Fraction(0))
        if k in om.poles:
            b = sum((w * dict((s, b0) for s, b0, _ in ledgers[kind].b)[k] for kind, w in weights.items()),
                    Fraction(0))
            if g - b != 0:
                raise DomainError(f"A00 keeps a pole at s = 0 from sigma = {k}")
            continue
        if g != 0:
            closed.append(float(g) * om.zeta(float(k)))

    # direct part of A00, summed in chunks up to 2N
    total_n = 2 * truncation
    bounds = [(lo, min(lo + CHUNK_SIZE, total_n + 1)) for lo in range(1, total_n + 1, CHUNK_SIZE)]

    def chunk(bound):
        lo, hi = bound
        n = np.arange(lo, hi, dtype=float)
        mu = om.value(n)
        r = np.zeros_like(mu)
        for kind, w in weights.items():
            r += float(w) * ledgers[kind].smooth_remainder(mu, K)
        return om.base_multiplicity(n) * r

    pieces: List[np.ndarray] = [None] * len(bounds)  # type: ignore[list-item]
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        for i, arr in enumerate(pool.map(chunk, bounds)):
            pieces[i] = arr
            if progress is not None:
                progress(i + 1, len(bounds))
    terms = np.concatenate(pieces)
    s_n = math.fsum(terms[:truncation])
    s_2n = math.fsum(terms)
    tail = abs(s_2n - s_n)
    if tolerance is not None and tail > tolerance:
        raise InsufficientTruncationError(f"A-sum tail {tail:.3e} exceeds tolerance {tolerance:.3e}")
    a00 = math.fsum(closed + [s_2n])

    pole_terms: Dict[int, Tuple[MeromorphicValue, MeromorphicValue]] = {}
    res_sum = finite_sum = cross_sum = 0.0
    for sigma in om.poles:
        phi = phi_combination(weights, sigma)
        if phi.constant != 0:
            raise DomainError(f"phi_{sigma} of the combination has a non-zero constant term")
        transform = phi_mellin(phi)
        phi0 = phi_at_zero(transform)
        zeta_u = om.zeta_laurent(float(sigma)).meromorphic()
        pole_terms[sigma] = (phi0, zeta_u)
        res_sum += phi0.residue * zeta_u.residue
        finite_sum += phi0.finite_part * zeta_u.residue
        cross_sum += phi0.residue * zeta_u.finite_part

    value = -a01 + 0.5 * res_sum
    deriv = -a00 - a01_deriv + 0.5 * EULER_GAMMA * res_sum + 0.5 * finite_sum + cross_sum
    return CombinationResult(value, deriv, tail, truncation, a00, a01, a01_deriv, pole_terms)
