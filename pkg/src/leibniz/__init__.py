"""Exact arithmetic, operators and checks for the Leibniz rule T(pq) = T(p)q + pT(q)."""

from .errors import LeibnizError
from .maps import Derivation, LinCombMap, PrimeLog, SampledMap, ZeroMap, lmap_eval
from .operators import (
    CoeffDerivation,
    DegreeScale,
    IdentityNonCompliant,
    LinComb,
    OrderZero,
    PointwiseLog,
    Representation,
    RootPower,
    RootPowerReal,
    ScaledDerivative,
    apply,
    apply_expanded,
)
from .parsing import parse_poly, parse_scalar, print_poly, print_scalar
from .poly import FactoredPoly, Poly, RealFactoredPoly
from .scalars import ScalarElem

__version__ = "0.1.0"

__all__ = [
    "CoeffDerivation",
    "DegreeScale",
    "Derivation",
    "FactoredPoly",
    "IdentityNonCompliant",
    "LeibnizError",
    "LinComb",
    "LinCombMap",
    "OrderZero",
    "PointwiseLog",
    "Poly",
    "PrimeLog",
    "RealFactoredPoly",
    "Representation",
    "RootPower",
    "RootPowerReal",
    "SampledMap",
    "ScalarElem",
    "ScaledDerivative",
    "ZeroMap",
    "apply",
    "apply_expanded",
    "lmap_eval",
    "parse_poly",
    "parse_scalar",
    "print_poly",
    "print_scalar",
]
