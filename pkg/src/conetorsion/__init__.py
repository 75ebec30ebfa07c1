"""Analytic torsion of metric cones over spheres.

Two independent routes compute log T for the cones over S^1, S^2 and S^3:
closed formulas (``torsion_closed``) and a spectral assembly from Bessel
zero sequences (``torsion_spectral``). The boundary anomaly and the
conjectured formula for cones over odd spheres are exposed alongside.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .anomaly import (
    AnomalyResult,
    CMDecomposition,
    anomaly_even_sphere,
    anomaly_odd_sphere,
    cm_decomposition,
    reidemeister,
)
from .errors import (
    BesselOverflowError,
    BranchError,
    ConeTorsionError,
    ConvergenceError,
    DomainError,
    InsufficientTruncationError,
    PoleError,
    UnsupportedError,
)
from .specfun import ZeroKind, find_zeros
from .spectra import ConeGeometry
from .torsion import (
    TorsionBreakdown,
    conjecture_formula,
    f_series,
    f_value,
    torsion_closed,
    torsion_spectral,
)

__all__ = [
    "AnomalyResult",
    "BesselOverflowError",
    "BranchError",
    "CMDecomposition",
    "ConeGeometry",
    "ConeTorsionError",
    "ConvergenceError",
    "DomainError",
    "InsufficientTruncationError",
    "PoleError",
    "TorsionBreakdown",
    "UnsupportedError",
    "ZeroKind",
    "anomaly_even_sphere",
    "anomaly_odd_sphere",
    "cm_decomposition",
    "conjecture_formula",
    "f_series",
    "f_value",
    "find_zeros",
    "reidemeister",
    "torsion_closed",
    "torsion_spectral",
]
