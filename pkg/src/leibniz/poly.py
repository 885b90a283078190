"""Univariate polynomials in z over ScalarElem: dense, factored and real-factored forms."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    DegreeCapExceeded,
    DivisionByZeroPoly,
    IncompleteFactorization,
    NotDivisible,
    UnsupportedCoefficients,
    ZeroPolynomial,
)
from .gaussian import (
    DEFAULT_NORM_BOUND,
    UNITS,
    GaussianInteger,
    gaussian_factorize,
    split_gaussian_rational,
)
from .scalars import ONE, ZERO, GaussianRational, ScalarElem, ScalarLike

DEFAULT_DEGREE_CAP = 64


def _trim(coeffs: list) -> tuple:
    n = len(coeffs)
    while n and coeffs[n - 1].is_zero():
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    """Dense polynomial; ``coeffs[k]`` multiplies z**k.  Zero is ``()``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        self.coeffs = _trim([ScalarElem.of(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        return obj

    @classmethod
    def const(cls, c: ScalarLike) -> "Poly":
        return cls([c])

    @classmethod
    def z(cls) -> "Poly":
        return cls._raw((ZERO, ONE))

    @classmethod
    def monomial(cls, k: int, c: ScalarLike = 1) -> "Poly":
        return cls([ZERO] * k + [ScalarElem.of(c)])

    @classmethod
    def linear(cls, root: ScalarLike) -> "Poly":
        """z - root."""
        return cls._raw(_trim([-ScalarElem.of(root), ONE]))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def coeff(self, k: int) -> ScalarElem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    @property
    def lead(self) -> ScalarElem:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        if isinstance(other, (int, ScalarElem)):
            other = Poly.const(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Poly._raw(_trim(out))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        if isinstance(other, (int, ScalarElem)):
            other = Poly.const(other)
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(ScalarElem.of(other))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                if not y.is_zero():
                    out[i + j] = out[i + j] + x * y
        return Poly._raw(_trim(out))

    def __rmul__(self, other) -> "Poly":
        return self.scale(ScalarElem.of(other))

    def scale(self, c: ScalarElem) -> "Poly":
        if c.is_zero():
            return Poly._raw(())
        return Poly._raw(_trim([x * c for x in self.coeffs]))

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by z**k."""
        if not self.coeffs:
            return self
        return Poly._raw((ZERO,) * k + self.coeffs)

    def __call__(self, z0: ScalarLike) -> ScalarElem:
        return eval_poly(self, ScalarElem.of(z0))

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __str__(self) -> str:
        from .parsing import print_poly

        return print_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self})"


def poly_arith(lhs: Poly, rhs: Poly, kind: str) -> Poly:
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    raise ValueError(f"unknown polynomial arithmetic kind {kind!r}")


def degree(p: Poly) -> int:
    if not p.coeffs:
        raise ZeroPolynomial("degree of the zero polynomial is undefined")
    return len(p.coeffs) - 1


def derivative(p: Poly) -> Poly:
    return Poly._raw(_trim([c * k for k, c in enumerate(p.coeffs)][1:]))


def eval_poly(p: Poly, z0: ScalarElem) -> ScalarElem:
    acc = ZERO
    for c in reversed(p.coeffs):
        acc = acc * z0 + c
    return acc


def divmod_poly(p: Poly, d: Poly) -> tuple[Poly, Poly]:
    if not d.coeffs:
        raise DivisionByZeroPoly("division by the zero polynomial")
    rem = list(p.coeffs)
    dd = len(d.coeffs) - 1
    inv_lead = d.coeffs[-1].inverse()
    if len(rem) <= dd:
        return Poly._raw(()), p
    quot = [ZERO] * (len(rem) - dd)
    for k in range(len(rem) - 1, dd - 1, -1):
        c = rem[k]
        if c.is_zero():
            continue
        q = c * inv_lead
        quot[k - dd] = q
        for j, dc in enumerate(d.coeffs):
            if not dc.is_zero():
                rem[k - dd + j] = rem[k - dd + j] - q * dc
    return Poly._raw(_trim(quot)), Poly._raw(_trim(rem[:dd]))


def exact_div(p: Poly, d: Poly) -> Poly:
    q, r = divmod_poly(p, d)
    if r.coeffs:
        raise NotDivisible(f"{d} does not divide {p}")
    return q


def deflate(p: Poly, root: ScalarElem) -> tuple[Poly, ScalarElem]:
    """Synthetic division by (z - root): quotient and remainder p(root)."""
    n = len(p.coeffs)
    if n == 0:
        return p, ZERO
    out = [ZERO] * (n - 1)
    acc = ZERO
    for k in range(n - 1, 0, -1):
        acc = acc * root + p.coeffs[k]
        out[k - 1] = acc
    rem = acc * root + p.coeffs[0]
    return Poly._raw(_trim(out)), rem


def order_of_zero(p: Poly, x0: ScalarElem) -> int:
    """Largest k with (z - x0)**k | p."""
    if not p.coeffs:
        raise ZeroPolynomial("order of zero of the zero polynomial is undefined")
    k = 0
    while True:
        q, r = deflate(p, x0)
        if not r.is_zero():
            return k
        p = q
        k += 1


# -- factored forms -----------------------------------------------------------


@dataclass(frozen=True)
class FactoredPoly:
    """lead * prod(z - r for r in roots)."""

    lead: ScalarElem
    roots: tuple[ScalarElem, ...] = ()

    def __post_init__(self):
        lead = ScalarElem.of(self.lead)
        if lead.is_zero():
            raise ZeroPolynomial("factored form needs a nonzero leading coefficient")
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "roots", tuple(ScalarElem.of(r) for r in self.roots))

    @property
    def degree(self) -> int:
        return len(self.roots)

    def __mul__(self, other: "FactoredPoly") -> "FactoredPoly":
        return FactoredPoly(self.lead * other.lead, self.roots + other.roots)

    def monic_product(self) -> Poly:
        return _product_of_linears(self.roots)

    def __str__(self) -> str:
        from .parsing import print_scalar

        inner = ", ".join(print_scalar(r) for r in self.roots)
        return f"{print_scalar(self.lead)} * roots[{inner}]"


def _product_of_linears(roots: Sequence[ScalarElem]) -> Poly:
    coeffs = [ONE]
    for r in roots:
        # multiply by (z - r) in place
        nr = -r
        new = [ZERO] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] = new[k + 1] + c
            new[k] = new[k] + c * nr
        coeffs = new
    return Poly._raw(_trim(coeffs))


def expand(p: FactoredPoly, cap: int = DEFAULT_DEGREE_CAP) -> Poly:
    if p.degree > cap:
        raise DegreeCapExceeded(f"degree {p.degree} exceeds cap {cap}")
    return _product_of_linears(p.roots).scale(p.lead)


@dataclass(frozen=True)
class RealFactoredPoly:
    """lead * prod(z - r) * prod(z**2 + alpha*z + beta) with real data.

    Each quadratic must have negative discriminant.
    """

    lead: ScalarElem
    linear: tuple[ScalarElem, ...] = ()
    quadratics: tuple[tuple[ScalarElem, ScalarElem], ...] = ()

    def __post_init__(self):
        lead = ScalarElem.of(self.lead)
        if lead.is_zero():
            raise ZeroPolynomial("factored form needs a nonzero leading coefficient")
        linear = tuple(ScalarElem.of(r) for r in self.linear)
        quads = tuple((ScalarElem.of(a), ScalarElem.of(b)) for a, b in self.quadratics)
        for x in (lead, *linear, *(v for q in quads for v in q)):
            if not x.is_real_rational():
                raise UnsupportedCoefficients(f"{x} is not a real rational")
        for a, b in quads:
            disc = a * a - b * 4
            if not disc.c.re < 0:
                raise ValueError(f"z^2 + ({a})*z + ({b}) is reducible over the reals")
        object.__setattr__(self, "lead", lead)
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "quadratics", quads)

    def quadratic_product(self) -> Poly:
        out = Poly.const(1)
        for a, b in self.quadratics:
            out = out * Poly([b, a, ONE])
        return out

    def expand(self) -> Poly:
        return _product_of_linears(self.linear).scale(self.lead) * self.quadratic_product()


def to_real_factored(p: FactoredPoly) -> RealFactoredPoly:
    """Pair complex-conjugate roots into real quadratics."""
    if not p.lead.is_real_rational():
        raise UnsupportedCoefficients("leading coefficient is not a real rational")
    linear, pending = [], []
    for r in p.roots:
        if not r.is_constant():
            raise UnsupportedCoefficients(f"root {r} is not in Q(i)")
        if r.c.im == 0:
            linear.append(r)
        else:
            pending.append(r)
    quads = []
    while pending:
        r = pending.pop(0)
        conj = r.conjugate_constant()
        for idx, s in enumerate(pending):
            if s == conj:
                del pending[idx]
                break
        else:
            raise UnsupportedCoefficients(f"root {r} has no conjugate partner; polynomial is not real")
        quads.append((-(r + conj), r * conj))
    return RealFactoredPoly(p.lead, tuple(linear), tuple(quads))


# -- factorization over Q(i) --------------------------------------------------


def _gaussian_integer_coeffs(p: Poly) -> list[GaussianInteger]:
    for c in p.coeffs:
        if not c.is_constant():
            raise UnsupportedCoefficients("factorization needs coefficients in Q(i)")
    splits = [split_gaussian_rational(c.c) for c in p.coeffs]
    scale = lcm(*(n for _, n in splits))
    return [GaussianInteger(g.re * (scale // n), g.im * (scale // n)) for g, n in splits]


def gaussian_divisors(g: GaussianInteger, norm_bound: int = DEFAULT_NORM_BOUND) -> list[GaussianInteger]:
    """Divisors of g up to units (canonical associates), including 1."""
    _, factors = gaussian_factorize(g, norm_bound)
    out = []
    for exps in product(*(range(e + 1) for _, e in factors)):
        d = GaussianInteger(1)
        for (prime, _), k in zip(factors, exps):
            d = d * prime**k
        out.append(d)
    return out


def try_factor(p: Poly, norm_bound: int = DEFAULT_NORM_BOUND) -> FactoredPoly:
    """Split p into linear factors over Q(i), or raise IncompleteFactorization.

    Candidate roots are u * alpha / beta with alpha dividing the trailing and
    beta dividing the leading coefficient of the integer-scaled polynomial.
    """
    if not p.coeffs:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    ints = _gaussian_integer_coeffs(p)
    lead = p.lead
    roots: list[ScalarElem] = []
    low = 0
    while ints[low].re == 0 and ints[low].im == 0:
        low += 1
    roots.extend([ZERO] * low)
    rest = Poly._raw(p.coeffs[low:])
    if degree(rest) > 0:
        alphas = gaussian_divisors(ints[low], norm_bound)
        betas = gaussian_divisors(ints[-1], norm_bound)
        seen = set()
        for a, b in product(alphas, betas):
            for u in UNITS:
                num = u * a
                cand = ScalarElem.const(GaussianRational(num.re, num.im)) / b.to_scalar()
                if cand in seen:
                    continue
                seen.add(cand)
                while degree(rest) > 0:
                    q, r = deflate(rest, cand)
                    if not r.is_zero():
                        break
                    roots.append(cand)
                    rest = q
                if degree(rest) == 0:
                    break
            if degree(rest) == 0:
                break
    if degree(rest) > 0:
        raise IncompleteFactorization(
            f"{degree(rest)} root(s) of {p} are not Gaussian rationals"
        )
    return FactoredPoly(lead, tuple(roots))
