"""Check suites shared by ``conetorsion verify`` and the acceptance tests.

Every check yields a :class:`Check` row (name, expected, got, tolerance,
status). Expected values are either exact rationals or closed-form numbers
quoted next to each check; none are read back from the code under test.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional

import numpy as np
from scipy import special as sp

from .anomaly import (
    cm_decomposition,
    even_sphere_coefficients,
    odd_sphere_coefficients,
    singular_coefficients,
)
from .besselseq import expansion_order, phi_combination
from .decomp import contour_integral_check, phi_mellin, zeta_zero_and_deriv
from .specfun import ZeroKind, find_zeros
from .spectra import (
    ConeGeometry,
    OrderMap,
    ZeroSequenceSpec,
    bessel_quadratic_zeta_at0,
    laurent_fit_residue,
    zeta_Lq,
    zeta_U1,
)
from .torsion import (
    closed_form_coefficients,
    conjecture_coefficients,
    conjecture_formula,
    f_continuation,
    f_value,
    torsion_closed,
    torsion_spectral,
)


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    got: str
    tolerance: str
    passed: bool
    criterion: Optional[int] = None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def numeric(name: str, expected: float, got: float, tol: float, criterion: Optional[int] = None,
            relative: bool = False) -> Check:
    err = abs(got - expected)
    if relative:
        err /= abs(expected)
    return Check(name, f"{expected:.12g}", f"{got:.12g}", f"{tol:g}{' rel' if relative else ''}",
                 bool(err < tol), criterion)


def exact(name: str, expected, got, criterion: Optional[int] = None) -> Check:
    return Check(name, str(expected), str(got), "exact", expected == got, criterion)


def _fmt_poly(coeffs: Dict[int, Fraction]) -> str:
    if not coeffs:
        return "0"
    return " + ".join(f"({c})a^{k}" for k, c in sorted(coeffs.items()))


GRID_DIMS = (1, 2, 3)
GRID_ALPHAS = (math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2)
GRID_LENGTHS = (0.5, 1.0, 2.0)
NU_VALUES = (1.0, 1.5, 2.0, 4.0)


# ---------------------------------------------------------------------------
# specfun: product oracle, zero properties, uniform expansion order
# ---------------------------------------------------------------------------

PRODUCT_ZEROS = 10_000


def product_oracle_zprime(nu: float, q: float, l: float, count: int = PRODUCT_ZEROS) -> float:
    """z'(0) from the Weierstrass product of I_nu over ``count`` zeros plus a tail estimate.

    log I_nu(x) = nu log(x/2) - log Gamma(nu+1) + sum_k log(1 + x^2/j_k^2); the
    omitted zeros contribute about x^2/(pi^2 (K + nu/2 + 1/4)).
    """
    x = l * q
    j = find_zeros(ZeroKind.J, nu, count)
    partial = math.fsum(np.log1p((x / j) ** 2))
    tail = x * x / (math.pi ** 2 * (count + nu / 2 + 0.25))
    log_i = nu * math.log(x / 2) - math.lgamma(nu + 1) + partial + tail
    return -(0.5 * math.log(2 * math.pi * l) + log_i - nu * math.log(q))


def suite_specfun() -> Iterator[Check]:
    yield numeric("zeros j nu=0 first", 2.4048255577, float(find_zeros(ZeroKind.J, 0.0, 1)[0]), 1e-10)
    for nu, q, l in ((1.0, 1.0, 1.0), (0.5, 2.0, 1.0), (2.0, 0.5, 3.0)):
        closed = bessel_quadratic_zeta_at0(nu, q, l)[1]
        yield numeric(f"z'(0) product oracle nu={nu} q={q} l={l}", product_oracle_zprime(nu, q, l),
                      closed, 1e-6, 6)
    for nu in (0.0, 0.5, 1.0, 5.0, 20.0):
        z = find_zeros(ZeroKind.J, nu, 50)
        z_next = find_zeros(ZeroKind.J, nu + 1.0, 50)
        zp = find_zeros(ZeroKind.Jprime, nu, 50)
        res = max(float(np.max(np.abs(sp.jv(nu, z)))), float(np.max(np.abs(sp.jvp(nu, zp)))))
        yield Check(f"zero residual nu={nu}", "< 1e-12", f"{res:.3g}", "1e-12", res < 1e-12, 10)
        ok = bool(np.all(z < z_next) and np.all(z_next[:-1] < z[1:]))
        if nu > 0:
            ok = ok and bool(np.all(zp < z) and np.all(z[:-1] < zp[1:]))
        else:
            # with the zero at the origin skipped, j'_{0,k} = j_{1,k}
            ok = ok and bool(np.all(z < zp) and np.all(zp[:-1] < z[1:]))
        yield Check(f"interlacing nu={nu}", "True", str(ok), "exact", ok, 10)
    for kind, om in ((ZeroKind.J, "mu1"), (ZeroKind.Jprime, "mu1"), (ZeroKind.Tplus, "mu0"),
                     (ZeroKind.Tminus, "mu0"), (ZeroKind.Gplus, "muS2"), (ZeroKind.Gminus, "muS2")):
        spec = ZeroSequenceSpec(kind, OrderMap(om, 1.0))
        e = expansion_order(spec, 49, 99)
        yield Check(f"expansion order {kind.value}", "[3.5, 4.5]", f"{e:.4f}", "interval",
                    3.5 <= e <= 4.5, 10)


# ---------------------------------------------------------------------------
# decomp: constants, Phi finite parts, residues, contour formula
# ---------------------------------------------------------------------------

PHI_EXPECTED = {
    "Jprime-J": (Fraction(-1), Fraction(1, 8), Fraction(-2, 315)),
    "2J-Tplus-Tminus": (Fraction(2), Fraction(-5, 2), Fraction(214, 315)),
}
COMBINATION_LABEL = {"Jprime-J": "Part I", "2J-Tplus-Tminus": "Part II"}


def suite_decomp() -> Iterator[Check]:
    for nu in NU_VALUES:
        u1, u0 = OrderMap("mu1", nu), OrderMap("mu0", nu)
        r1 = zeta_zero_and_deriv([(1, ZeroSequenceSpec(ZeroKind.Jprime, u1)),
                                  (-1, ZeroSequenceSpec(ZeroKind.J, u1))])
        yield numeric(f"Part I zeta(0) nu={nu}", 0.25, r1.value, 1e-12, 3)
        r2 = zeta_zero_and_deriv([(2, ZeroSequenceSpec(ZeroKind.J, u0)),
                                  (-1, ZeroSequenceSpec(ZeroKind.Tplus, u0)),
                                  (-1, ZeroSequenceSpec(ZeroKind.Tminus, u0))])
        yield numeric(f"Part II zeta(0) nu={nu}", 1.0, r2.value, 1e-12, 3)
    for combo, expected in PHI_EXPECTED.items():
        for sigma, want in enumerate(expected, start=1):
            fp = phi_mellin(phi_combination(combo, sigma), drop_constant=True).exact_finite_part
            got = fp.rational if fp.is_rational else fp
            yield exact(f"{COMBINATION_LABEL[combo]} Phi_{sigma} finite part", want, got, 3)
    for nu in NU_VALUES:
        r1 = laurent_fit_residue(lambda s: zeta_U1(s, nu), 1.0)
        r3 = laurent_fit_residue(lambda s: zeta_U1(s, nu), 3.0)
        yield numeric(f"Res s=1 zeta(s,U1) nu={nu}", -1.0 / nu, r1, 1e-8, 4)
        yield numeric(f"Res s=3 zeta(s,U1) nu={nu}", 1.0 / nu ** 3, r3, 1e-8, 4)
    for q in (0.0, 0.5, 1.5):
        r = laurent_fit_residue(lambda s: zeta_Lq(s, q), 1.0)
        yield numeric(f"Res s=1 zeta(s,L_q) q={q}", (1.0 - q) / 2.0, r, 1e-8, 4)
    for s, a in ((0.3, 0.5), (0.5, 1.0), (0.7, 1.0), (1.2, 2.5)):
        want = math.gamma(s + a) / (math.gamma(a) * s)
        yield numeric(f"contour formula s={s} a={a}", want, contour_integral_check(s, a), 1e-6, 5,
                      relative=True)


# ---------------------------------------------------------------------------
# torsion: closed forms, dual path, smooth disc, conjecture
# ---------------------------------------------------------------------------

CLOSED_STRUCTURE = {
    1: {1: Fraction(1, 2)},
    2: {2: Fraction(1, 4)},
    3: {1: Fraction(3, 4), 3: Fraction(-1, 12)},
}
DUAL_TOL = {1: 1e-5, 2: 1e-4, 3: 1e-5}


def _closed_reference(n: int, alpha: float, l: float, f_of_nu: Callable[[float], float]) -> float:
    """Closed formulas written out independently of the package's volume code."""
    a = math.sin(alpha)
    if n == 1:
        return 0.5 * math.log(math.pi * l * l * a) + a / 2
    if n == 2:
        return 0.5 * math.log(4 * math.pi * l ** 3 * a * a / 3) - 0.5 * f_of_nu(1 / a) + a * a / 4
    return 0.5 * math.log(math.pi ** 2 * l ** 4 * a ** 3 / 2) + 0.75 * a - a ** 3 / 12


def suite_torsion() -> Iterator[Check]:
    for n, want in CLOSED_STRUCTURE.items():
        yield exact(f"closed extra-term structure n={n}", _fmt_poly(want),
                    _fmt_poly(closed_form_coefficients(n)), 1)
    yield numeric("closed n=1 alpha=pi/2 l=1", 1.0723649, torsion_closed(ConeGeometry(1, math.pi / 2)).log_torsion,
                  1e-6, 1)
    yield numeric("closed n=3 alpha=pi/2 l=1", 1.4648233, torsion_closed(ConeGeometry(3, math.pi / 2)).log_torsion,
                  1e-6, 1)
    for n in GRID_DIMS:
        worst_closed = 0.0
        worst_dual = 0.0
        for alpha in GRID_ALPHAS:
            for l in GRID_LENGTHS:
                geom = ConeGeometry(n, alpha, l)
                c = torsion_closed(geom)
                worst_closed = max(worst_closed, abs(c.log_torsion - _closed_reference(n, alpha, l, f_value)),
                                   abs(c.log_torsion - c.volume_term - sum(v for _, v in c.extra_terms)))
                s = torsion_spectral(geom)
                worst_dual = max(worst_dual, abs(s.log_torsion - c.log_torsion))
        yield Check(f"closed grid n={n}", "< 1e-12", f"{worst_closed:.3g}", "1e-12", worst_closed < 1e-12, 1)
        yield Check(f"dual path grid n={n}", f"< {DUAL_TOL[n]:g}", f"{worst_dual:.3g}", f"{DUAL_TOL[n]:g}",
                    worst_dual < DUAL_TOL[n], 2)
    yield numeric("f(1) via continuation", -math.log(2.0), f_continuation(1.0), 1e-5, 8)
    sing = cm_decomposition(ConeGeometry(2, math.pi / 2)).singular_term
    yield Check("singular term n=2 alpha=pi/2", "0", f"{sing:.3g}", "1e-5", abs(sing) < 1e-5, 8)
    for p, n in ((1, 1), (2, 3)):
        yield exact(f"conjecture sum p={p}", _fmt_poly(closed_form_coefficients(n)),
                    _fmt_poly(conjecture_coefficients(p)), 9)
    worst = 0.0
    for alpha in GRID_ALPHAS:
        for l in GRID_LENGTHS:
            worst = max(worst, abs(conjecture_formula(2, alpha, l)
                                   - torsion_closed(ConeGeometry(3, alpha, l)).log_torsion))
    yield Check("conjecture p=2 vs closed n=3", "< 1e-12", f"{worst:.3g}", "1e-12", worst < 1e-12, 9)


# ---------------------------------------------------------------------------
# anomaly: exact identities
# ---------------------------------------------------------------------------

def suite_anomaly() -> Iterator[Check]:
    yield exact("anomaly odd p=1", _fmt_poly({1: Fraction(1, 2)}), _fmt_poly(odd_sphere_coefficients(1)), 7)
    yield exact("anomaly odd p=2", _fmt_poly({1: Fraction(3, 4), 3: Fraction(-1, 12)}),
                _fmt_poly(odd_sphere_coefficients(2)), 7)
    yield exact("anomaly even p=1", _fmt_poly({2: Fraction(1, 4)}), _fmt_poly(even_sphere_coefficients(1)), 7)
    for n in (1, 3):
        yield exact(f"singular term n={n} symbolic", "0", _fmt_poly(singular_coefficients(n)), 7)
        worst = max(abs(cm_decomposition(ConeGeometry(n, alpha, l)).singular_term)
                    for alpha in GRID_ALPHAS for l in GRID_LENGTHS)
        yield Check(f"singular term n={n} numeric", "0", f"{worst:.3g}", "1e-12", worst < 1e-12, 7)


SUITES: Dict[str, Callable[[], Iterator[Check]]] = {
    "specfun": suite_specfun,
    "decomp": suite_decomp,
    "torsion": suite_torsion,
    "anomaly": suite_anomaly,
}


def run_suites(name: str = "all") -> List[Check]:
    names = list(SUITES) if name == "all" else [name]
    out: List[Check] = []
    for key in names:
        out.extend(SUITES[key]())
    return out
