"""Operators on polynomials that satisfy T(pq) = T(p) q + p T(q).

Root-indexed operators take a :class:`FactoredPoly`; :func:`apply_expanded`
is the front door for dense input and factors over Q(i) when it must.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .errors import DomainGap, UnsupportedCoefficients, UnsupportedOperation
from .maps import LeibnizMapSpec, coeff_lift, is_additive_spec, lmap_eval
from .poly import (
    FactoredPoly,
    Poly,
    RealFactoredPoly,
    deflate,
    degree,
    derivative,
    eval_poly,
    expand,
    order_of_zero,
    to_real_factored,
    try_factor,
)
from .scalars import ScalarElem, ScalarLike

# -- function families used as representation blocks ---------------------------


@dataclass(frozen=True)
class ConstantFn:
    value: ScalarElem

    def __post_init__(self):
        object.__setattr__(self, "value", ScalarElem.of(self.value))


@dataclass(frozen=True)
class PolyInC:
    """c -> poly(c)."""

    poly: Poly


@dataclass(frozen=True)
class TableFn:
    """Finite overrides; ``default=None`` leaves other points undefined."""

    overrides: Mapping[ScalarElem, ScalarElem] = field(hash=False)
    default: "FnSpec | None" = None

    def __hash__(self) -> int:
        return hash((frozenset(self.overrides.items()), self.default))


FnSpec = Union[ConstantFn, PolyInC, TableFn]


def fn_eval(spec: FnSpec, c: ScalarElem) -> ScalarElem:
    if isinstance(spec, ConstantFn):
        return spec.value
    if isinstance(spec, PolyInC):
        return spec.poly(c)
    if isinstance(spec, TableFn):
        hit = spec.overrides.get(c)
        if hit is not None:
            return hit
        if spec.default is None:
            raise DomainGap(f"function table has no value at {c}")
        return fn_eval(spec.default, c)
    raise TypeError(f"not a function spec: {spec!r}")


@dataclass(frozen=True)
class NatFnSpec:
    """A function into the nonnegative integers, given by overrides and a default."""

    overrides: Mapping[ScalarElem, int] = field(default_factory=dict, hash=False)
    default: int = 0

    def __post_init__(self):
        if self.default < 0 or any(v < 0 for v in self.overrides.values()):
            raise ValueError("exponent function values must be nonnegative")

    def __call__(self, c: ScalarElem) -> int:
        return self.overrides.get(c, self.default)

    def __hash__(self) -> int:
        return hash((frozenset(self.overrides.items()), self.default))


@dataclass(frozen=True)
class RepBlocks:
    psi: tuple[FnSpec, ...]
    phi: tuple[LeibnizMapSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "psi", tuple(self.psi))
        object.__setattr__(self, "phi", tuple(self.phi))
        if len(self.psi) != len(self.phi) or not self.psi:
            raise ValueError("psi and phi block families must have equal nonzero length")

    @property
    def kmax(self) -> int:
        return len(self.psi) - 1


# -- operator specs ------------------------------------------------------------------


@dataclass(frozen=True)
class OrderZero:
    """p -> n_x0(p) * p."""

    x0: ScalarElem

    def __post_init__(self):
        object.__setattr__(self, "x0", ScalarElem.of(self.x0))


@dataclass(frozen=True)
class DegreeScale:
    """p -> deg(p) * p."""


@dataclass(frozen=True)
class ScaledDerivative:
    """p -> p' * p0."""

    p0: Poly


@dataclass(frozen=True)
class CoeffDerivation:
    """p -> p^d (d applied to every coefficient)."""

    d: LeibnizMapSpec


@dataclass(frozen=True)
class RootPower:
    """a * sum_k q0**f(z_k) * prod_{j != k} (z - z_j)."""

    q0: Poly
    f: NatFnSpec


@dataclass(frozen=True)
class RootPowerReal:
    """Real variant: q0 powers on real roots, irreducible quadratics carried along."""

    q0: Poly
    f: NatFnSpec


@dataclass(frozen=True)
class Representation:
    blocks: RepBlocks


@dataclass(frozen=True)
class LinComb:
    terms: tuple[tuple[ScalarElem, "OperatorSpec"], ...]

    def __init__(self, terms: Sequence[tuple[ScalarLike, "OperatorSpec"]]):
        terms = tuple((ScalarElem.of(c), op) for c, op in terms)
        if not terms:
            raise ValueError("linear combination needs at least one term")
        object.__setattr__(self, "terms", terms)


@dataclass(frozen=True)
class PointwiseLog:
    """p -> p * ln|p|, evaluated pointwise in floating point."""


@dataclass(frozen=True)
class IdentityNonCompliant:
    """p -> p.  Violates the Leibniz rule; used as a negative control."""


OperatorSpec = Union[
    OrderZero,
    DegreeScale,
    ScaledDerivative,
    CoeffDerivation,
    RootPower,
    RootPowerReal,
    Representation,
    LinComb,
    PointwiseLog,
    IdentityNonCompliant,
]


def is_compliant(op: OperatorSpec) -> bool:
    if isinstance(op, (PointwiseLog, IdentityNonCompliant)):
        return False
    if isinstance(op, CoeffDerivation):
        # the coefficient lift only obeys the product rule for additive maps
        return is_additive_spec(op.d)
    if isinstance(op, LinComb):
        return all(is_compliant(t) for _, t in op.terms)
    return True


# -- application -------------------------------------------------------------------


def _sum_over_roots(p: FactoredPoly, factor_for_root) -> Poly:
    """a * sum_j (prod_{i != j} (z - z_i)) * factor_for_root(z_j)."""
    full = p.monic_product()
    out = Poly()
    cache: dict[ScalarElem, tuple[Poly, Poly]] = {}
    for r in p.roots:
        hit = cache.get(r)
        if hit is None:
            cofactor, rem = deflate(full, r)
            assert rem.is_zero()
            hit = (cofactor, factor_for_root(r))
            cache[r] = hit
        cofactor, g = hit
        if g:
            out = out + cofactor * g
    return out.scale(p.lead)


def _representation(blocks: RepBlocks, p: FactoredPoly) -> Poly:
    def linear_image(r: ScalarElem) -> Poly:
        c = -r
        return Poly(fn_eval(psi, c) + lmap_eval(phi, c) for psi, phi in zip(blocks.psi, blocks.phi))

    out = _sum_over_roots(p, linear_image)
    t_lead = Poly(lmap_eval(phi, p.lead) for phi in blocks.phi)
    if t_lead:
        out = out + t_lead * p.monic_product()
    return out


def _root_power(q0: Poly, f: NatFnSpec, p: FactoredPoly) -> Poly:
    return _sum_over_roots(p, lambda r: q0 ** f(r))


def apply(op: OperatorSpec, p: FactoredPoly) -> Poly:
    """T(p) for p in factored form."""
    if isinstance(op, OrderZero):
        n = sum(1 for r in p.roots if r == op.x0)
        return expand(p).scale(ScalarElem.of(n)) if n else Poly()
    if isinstance(op, DegreeScale):
        return expand(p).scale(ScalarElem.of(p.degree)) if p.degree else Poly()
    if isinstance(op, ScaledDerivative):
        return derivative(expand(p)) * op.p0
    if isinstance(op, CoeffDerivation):
        return coeff_lift(op.d, expand(p))
    if isinstance(op, RootPower):
        return _root_power(op.q0, op.f, p)
    if isinstance(op, RootPowerReal):
        return apply_real(op, to_real_factored(p))
    if isinstance(op, Representation):
        return _representation(op.blocks, p)
    if isinstance(op, LinComb):
        out = Poly()
        for c, sub in op.terms:
            out = out + apply(sub, p).scale(c)
        return out
    if isinstance(op, IdentityNonCompliant):
        return expand(p)
    if isinstance(op, PointwiseLog):
        raise UnsupportedOperation("pointwise log is not polynomial-valued; use pointwise_log_eval")
    raise TypeError(f"not an operator spec: {op!r}")


def _needs_roots(op: OperatorSpec) -> bool:
    if isinstance(op, (RootPower, RootPowerReal, Representation)):
        return True
    if isinstance(op, LinComb):
        return any(_needs_roots(t) for _, t in op.terms)
    return False


def apply_expanded(op: OperatorSpec, p: Poly) -> Poly:
    """T(p) for dense p; root-indexed operators factor p over Q(i) first."""
    if isinstance(op, PointwiseLog):
        raise UnsupportedOperation("pointwise log is not polynomial-valued; use pointwise_log_eval")
    if not p:
        return Poly()
    if isinstance(op, OrderZero):
        n = order_of_zero(p, op.x0)
        return p.scale(ScalarElem.of(n)) if n else Poly()
    if isinstance(op, DegreeScale):
        n = degree(p)
        return p.scale(ScalarElem.of(n)) if n else Poly()
    if isinstance(op, ScaledDerivative):
        return derivative(p) * op.p0
    if isinstance(op, CoeffDerivation):
        return coeff_lift(op.d, p)
    if isinstance(op, IdentityNonCompliant):
        return p
    if isinstance(op, LinComb):
        out = Poly()
        for c, sub in op.terms:
            out = out + apply_expanded(sub, p).scale(c)
        return out
    return apply(op, try_factor(p))


def apply_any(op: OperatorSpec, p: "Poly | FactoredPoly") -> Poly:
    if isinstance(p, FactoredPoly):
        return apply(op, p)
    return apply_expanded(op, p)


def apply_real(op: RootPowerReal, p: RealFactoredPoly) -> Poly:
    if not isinstance(op, RootPowerReal):
        raise UnsupportedOperation("the real entry point only accepts the real root-power operator")
    linear = FactoredPoly(p.lead, p.linear)
    return _root_power(op.q0, op.f, linear) * p.quadratic_product()


def product_action(op: OperatorSpec, parts: Sequence["Poly | FactoredPoly"]) -> Poly:
    """sum_j (prod_{i != j} p_i) * T(p_j), evaluated literally."""
    if not parts:
        raise ValueError("product_action needs at least one part")
    dense = [expand(p) if isinstance(p, FactoredPoly) else p for p in parts]
    out = Poly()
    for j, part in enumerate(parts):
        img = apply_any(op, part)
        if not img:
            continue
        for i, other in enumerate(dense):
            if i != j:
                img = img * other
        out = out + img
    return out


# -- the pointwise logarithm ---------------------------------------------------------


@dataclass(frozen=True)
class PointValue:
    z: complex
    value: complex


def _exact_point(z) -> ScalarElem:
    if isinstance(z, (float, complex)):
        # every finite double is an exact dyadic rational
        z = complex(z)
        return ScalarElem.gaussian(Fraction(z.real), Fraction(z.imag))
    return ScalarElem.of(z)


def pointwise_log_eval(p: Poly, z: "complex | ScalarLike") -> PointValue:
    """p(z) * ln|p(z)| with the convention 0 * ln 0 = 0.

    p(z) is computed exactly (a double z is read as the rational it stores),
    so a root given exactly yields exactly 0; only the logarithm is rounded.
    """
    if any(not c.is_constant() for c in p.coeffs):
        raise UnsupportedCoefficients("pointwise log needs numeric (Q(i)) coefficients")
    exact = _exact_point(z)
    if not exact.is_constant():
        raise UnsupportedCoefficients("pointwise log needs a numeric evaluation point")
    value = eval_poly(p, exact)
    zc = complex(exact)
    if value.is_zero():
        return PointValue(zc, 0j)
    v = complex(value)
    return PointValue(zc, v * math.log(abs(v)))
