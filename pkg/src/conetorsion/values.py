"""Small value types shared by the spectral modules.

``MeromorphicValue`` records the residue and finite part of a function at a
point. ``Laurent`` carries one more coefficient so that products of two
meromorphic factors can be expanded correctly. ``ExactConstant`` keeps
numbers of the form r + g*gamma + k*log 2 with rational r, g, k, which is
the shape every finite part of the Mellin map takes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .specfun import EULER_GAMMA


@dataclass(frozen=True)
class MeromorphicValue:
    """Residue and finite part of a function with at most a simple pole at ``location``.

    At a regular point ``residue`` is 0 and ``finite_part`` is the value.
    """

    residue: float
    finite_part: float
    location: float = 0.0

    @property
    def is_regular(self) -> bool:
        return self.residue == 0


@dataclass(frozen=True)
class ExactConstant:
    """rational + gamma_coef*EulerGamma + log2_coef*log 2, all coefficients exact."""

    rational: Fraction = Fraction(0)
    gamma_coef: Fraction = Fraction(0)
    log2_coef: Fraction = Fraction(0)

    def __add__(self, other):
        if isinstance(other, ExactConstant):
            return ExactConstant(
                self.rational + other.rational,
                self.gamma_coef + other.gamma_coef,
                self.log2_coef + other.log2_coef,
            )
        if isinstance(other, (int, Fraction)):
            return ExactConstant(self.rational + other, self.gamma_coef, self.log2_coef)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return ExactConstant(-self.rational, -self.gamma_coef, -self.log2_coef)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if isinstance(k, (int, Fraction)):
            return ExactConstant(self.rational * k, self.gamma_coef * k, self.log2_coef * k)
        return NotImplemented

    __rmul__ = __mul__

    def __float__(self) -> float:
        return math.fsum(
            [float(self.rational), float(self.gamma_coef) * EULER_GAMMA, float(self.log2_coef) * math.log(2.0)]
        )

    @property
    def is_rational(self) -> bool:
        return self.gamma_coef == 0 and self.log2_coef == 0

    def __str__(self) -> str:
        parts = [str(self.rational)]
        if self.gamma_coef:
            parts.append(f"{self.gamma_coef}*gamma")
        if self.log2_coef:
            parts.append(f"{self.log2_coef}*log2")
        return " + ".join(parts)


@dataclass(frozen=True)
class Laurent:
    """c_m1/(s-s0) + c0 + c1*(s-s0) + O((s-s0)^2)."""

    c_m1: float
    c0: float
    c1: float
    location: float = 0.0

    @classmethod
    def regular(cls, value: float, deriv: float, location: float = 0.0) -> "Laurent":
        return cls(0.0, value, deriv, location)

    def __add__(self, other: "Laurent") -> "Laurent":
        self._same_point(other)
        return Laurent(self.c_m1 + other.c_m1, self.c0 + other.c0, self.c1 + other.c1, self.location)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + other.scale(-1.0)

    def scale(self, k: float) -> "Laurent":
        return Laurent(k * self.c_m1, k * self.c0, k * self.c1, self.location)

    def times_taylor(self, t0: float, t1: float, t2: float) -> "Laurent":
        """Multiply by the Taylor polynomial t0 + t1 h + t2 h^2 (h = s - s0)."""
        return Laurent(
            t0 * self.c_m1,
            t0 * self.c0 + t1 * self.c_m1,
            t0 * self.c1 + t1 * self.c0 + t2 * self.c_m1,
            self.location,
        )

    def _same_point(self, other: "Laurent") -> None:
        if self.location != other.location:
            raise ValueError("Laurent expansions about different points")

    def meromorphic(self) -> MeromorphicValue:
        return MeromorphicValue(self.c_m1, self.c0, self.location)
