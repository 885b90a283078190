"""Leibniz mappings on the scalar field: f(ab) = a f(b) + b f(a).

Four constructive families are provided.  ``Derivation`` is additive and
vanishes on Q(i); ``PrimeLog`` is x * sum(e_p(x) w(p)) over Gaussian-prime
valuations and is not additive.  ``SampledMap`` is a finite table used when
rebuilding an operator from sampled data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .errors import DomainGap, NotADerivation, SpecError, UnsupportedScalar
from .gaussian import GaussianInteger, is_canonical, is_gaussian_prime, is_unit, split_gaussian_rational, valuation
from .poly import Poly, derivative, eval_poly
from .report import CheckReport
from .scalars import ZERO, ScalarElem, ScalarLike


@dataclass(frozen=True)
class ZeroMap:
    pass


@dataclass(frozen=True)
class PrimeLog:
    weights: tuple[tuple[GaussianInteger, ScalarElem], ...]

    def __init__(self, weights: Mapping[GaussianInteger, ScalarLike] | Sequence = ()):
        items = weights.items() if isinstance(weights, Mapping) else weights
        table = {}
        for prime, w in items:
            if not isinstance(prime, GaussianInteger):
                raise SpecError(f"weight key {prime!r} is not a Gaussian integer")
            if is_unit(prime):
                raise SpecError(f"unit {prime} cannot carry a weight: every unit maps to 0")
            if not is_canonical(prime):
                raise SpecError(f"weight key {prime} is not a canonical associate")
            if not is_gaussian_prime(prime):
                raise SpecError(f"weight key {prime} is not a Gaussian prime")
            if prime in table:
                raise SpecError(f"duplicate weight for {prime}")
            table[prime] = ScalarElem.of(w)
        object.__setattr__(self, "weights", tuple(sorted(table.items())))


@dataclass(frozen=True)
class Derivation:
    """Sum of u_j * d/dt_j; zero on Q(i)."""

    u: tuple[ScalarElem, ...]

    def __init__(self, u: Sequence[ScalarLike]):
        object.__setattr__(self, "u", tuple(ScalarElem.of(x) for x in u))


@dataclass(frozen=True)
class LinCombMap:
    terms: tuple[tuple[ScalarElem, "LeibnizMapSpec"], ...]

    def __init__(self, terms: Sequence[tuple[ScalarLike, "LeibnizMapSpec"]]):
        object.__setattr__(self, "terms", tuple((ScalarElem.of(c), s) for c, s in terms))


@dataclass(frozen=True)
class SampledMap:
    table: Mapping[ScalarElem, ScalarElem] = field(hash=False)

    def __hash__(self) -> int:
        return hash(frozenset(self.table.items()))


LeibnizMapSpec = Union[ZeroMap, PrimeLog, Derivation, LinCombMap, SampledMap]


def _prime_log(spec: PrimeLog, x: ScalarElem) -> ScalarElem:
    if not x.is_constant():
        raise UnsupportedScalar(f"prime-logarithmic map needs a Q(i) argument, got {x}")
    if x.is_zero() or not spec.weights:
        return ZERO
    g, n = split_gaussian_rational(x.c)
    nint = GaussianInteger(n)
    total = ZERO
    for prime, w in spec.weights:
        e_num, _ = valuation(g, prime)
        e_den, _ = valuation(nint, prime)
        if e_num != e_den:
            total = total + w * (e_num - e_den)
    return x * total


def lmap_eval(spec: LeibnizMapSpec, x: ScalarLike) -> ScalarElem:
    x = ScalarElem.of(x)
    if isinstance(spec, ZeroMap):
        return ZERO
    if isinstance(spec, PrimeLog):
        return _prime_log(spec, x)
    if isinstance(spec, Derivation):
        if x.is_constant():
            return ZERO
        if x.nvars() > len(spec.u):
            raise UnsupportedScalar(f"{x} uses t{x.nvars()} but the derivation only covers t1..t{len(spec.u)}")
        out = ZERO
        for j, uj in enumerate(spec.u, start=1):
            if not uj.is_zero():
                out = out + uj * x.partial(j)
        return out
    if isinstance(spec, LinCombMap):
        out = ZERO
        for c, sub in spec.terms:
            out = out + c * lmap_eval(sub, x)
        return out
    if isinstance(spec, SampledMap):
        try:
            return spec.table[x]
        except KeyError:
            raise DomainGap(f"sampled map has no value at {x}") from None
    raise TypeError(f"not a Leibniz map spec: {spec!r}")


def lmap_check_leibniz(spec: LeibnizMapSpec, sample: Sequence[tuple[ScalarElem, ScalarElem]]) -> CheckReport:
    report = CheckReport()
    for a, b in sample:
        a, b = ScalarElem.of(a), ScalarElem.of(b)
        lhs = lmap_eval(spec, a * b)
        rhs = a * lmap_eval(spec, b) + b * lmap_eval(spec, a)
        report.record((a, b), lhs, rhs, "leibniz")
    return report


def lmap_check_additive(spec: LeibnizMapSpec, sample: Sequence[tuple[ScalarElem, ScalarElem]]) -> CheckReport:
    report = CheckReport()
    for a, b in sample:
        a, b = ScalarElem.of(a), ScalarElem.of(b)
        lhs = lmap_eval(spec, a + b)
        rhs = lmap_eval(spec, a) + lmap_eval(spec, b)
        report.record((a, b), lhs, rhs, "additive")
    return report


def coeff_lift(spec: LeibnizMapSpec, p: Poly) -> Poly:
    """Apply the map to every coefficient of p."""
    return Poly(lmap_eval(spec, c) for c in p.coeffs)


def spec_nvars(spec: LeibnizMapSpec) -> int:
    if isinstance(spec, Derivation):
        return len(spec.u)
    if isinstance(spec, LinCombMap):
        return max((spec_nvars(s) for _, s in spec.terms), default=0)
    return 0


def is_additive_spec(spec: LeibnizMapSpec) -> bool:
    """Structural additivity: zero maps, derivations and combinations of them.

    A prime-logarithmic map with nonzero weights is never additive, and a
    sampled table carries no such guarantee.
    """
    if isinstance(spec, (ZeroMap, Derivation)):
        return True
    if isinstance(spec, PrimeLog):
        return all(w.is_zero() for _, w in spec.weights)
    if isinstance(spec, LinCombMap):
        return all(c.is_zero() or is_additive_spec(s) for c, s in spec.terms)
    return False


def additivity_probe(spec: LeibnizMapSpec) -> list[tuple[ScalarElem, ScalarElem]]:
    q = ScalarElem.of
    pairs = [
        (q(2), q(3)),
        (q(1) / 2, ScalarElem.gaussian(0, 1)),
        (ScalarElem.gaussian(1, 1), q(-5) / 3),
        (q(5), q(-7)),
    ]
    for j in range(1, spec_nvars(spec) + 1):
        t = ScalarElem.t(j)
        pairs += [(t, q(1)), (t * t, t + 2), (t / (t + 1), q(1) / t)]
    return pairs


def chain_rule_check(spec: LeibnizMapSpec, p: Poly, a: ScalarLike) -> CheckReport:
    """Check f(p(a)) == p^f(a) + f(a) p'(a) for an additive map f."""
    a = ScalarElem.of(a)
    try:
        probe = lmap_check_additive(spec, additivity_probe(spec))
    except UnsupportedScalar as exc:
        raise NotADerivation(str(exc)) from exc
    if not probe.ok:
        w = probe.counterexamples[0]
        raise NotADerivation(f"map is not additive: f({w.inputs[0]} + {w.inputs[1]}) = {w.lhs} != {w.rhs}")
    lhs = lmap_eval(spec, eval_poly(p, a))
    rhs = eval_poly(coeff_lift(spec, p), a) + lmap_eval(spec, a) * eval_poly(derivative(p), a)
    report = CheckReport()
    report.record((p, a), lhs, rhs, "chain_rule")
    return report
