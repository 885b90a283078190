"""Seeded random generators for scalars, polynomials, maps and operators."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .gaussian import GaussianInteger
from .maps import Derivation, LeibnizMapSpec, LinCombMap, PrimeLog, ZeroMap
from .operators import ConstantFn, FnSpec, PolyInC, RepBlocks, Representation, TableFn
from .poly import FactoredPoly, Poly
from .scalars import MvPoly, ScalarElem, GaussianRational

G = ScalarElem.gaussian


def default_root_pool() -> tuple[ScalarElem, ...]:
    """Twelve Gaussian rationals used as roots by the fuzzers."""
    return (
        G(0), G(1), G(-1), G(2), G(-2), G(0, 1), G(0, -1),
        G(1, 1), G(1, -1), G(Fraction(1, 2)), G(Fraction(-1, 3)), G(2, 1),
    )


def default_lead_pool() -> tuple[ScalarElem, ...]:
    return (G(1), G(-1), G(2), G(-3), G(Fraction(1, 2)), G(0, 1), G(1, 1), G(Fraction(2, 3)))


def transcendental_pool(m: int = 1) -> tuple[ScalarElem, ...]:
    """Non-constant scalars in t1..tm for exercising derivations."""
    out = []
    for j in range(1, m + 1):
        t = ScalarElem.t(j)
        out += [t, -t, t + 1, t * t, t / (t + 1), G(0, 1) * t - 2]
    return tuple(out)


@dataclass(frozen=True)
class FuzzConfig:
    root_pool: tuple[ScalarElem, ...] = field(default_factory=default_root_pool)
    lead_pool: tuple[ScalarElem, ...] = field(default_factory=default_lead_pool)
    max_degree: int = 6
    min_degree: int = 0


def random_factored(rng: random.Random, config: FuzzConfig) -> FactoredPoly:
    n = rng.randint(config.min_degree, config.max_degree)
    roots = tuple(rng.choice(config.root_pool) for _ in range(n))
    return FactoredPoly(rng.choice(config.lead_pool), roots)


def random_rational(rng: random.Random, bound: int = 5, den_bound: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den_bound))


def random_gaussian(rng: random.Random, bound: int = 5, den_bound: int = 4) -> ScalarElem:
    re = random_rational(rng, bound, den_bound)
    im = random_rational(rng, bound, den_bound) if rng.random() < 0.5 else 0
    return G(re, im)


def random_mvpoly(rng: random.Random, m: int, max_deg: int = 2, max_terms: int = 3) -> MvPoly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(m))
        c = random_gaussian(rng).c
        terms[e] = terms.get(e, GaussianRational(0)) + c
    return MvPoly(terms)


def random_scalar(rng: random.Random, m: int = 1, fraction_rate: float = 0.2, nonzero: bool = False) -> ScalarElem:
    """Random element of Q(i)(t1..tm); constants about a third of the time."""
    while True:
        if m == 0 or rng.random() < 0.35:
            x = random_gaussian(rng)
        else:
            num = random_mvpoly(rng, m)
            if rng.random() < fraction_rate:
                den = random_mvpoly(rng, m, max_deg=1, max_terms=2)
                if den.is_zero():
                    continue
                x = ScalarElem(num, den)
            else:
                x = ScalarElem(num)
        if not nonzero or not x.is_zero():
            return x


def random_poly(rng: random.Random, max_degree: int = 5, m: int = 1) -> Poly:
    n = rng.randint(0, max_degree)
    coeffs = [random_scalar(rng, m, fraction_rate=0.1) if rng.random() < 0.8 else ScalarElem.of(0) for _ in range(n + 1)]
    return Poly(coeffs)


_SMALL_PRIMES = (
    GaussianInteger(1, 1), GaussianInteger(2, 1), GaussianInteger(1, 2),
    GaussianInteger(3), GaussianInteger(3, 2), GaussianInteger(2, 3), GaussianInteger(7),
)


def random_map(rng: random.Random, m: int = 1, depth: int = 1, allow_nonadditive: bool = True) -> LeibnizMapSpec:
    kinds = ["zero", "derivation"] + (["prime_log"] if allow_nonadditive else [])
    if depth > 0:
        kinds.append("lincomb")
    kind = rng.choice(kinds)
    if kind == "zero":
        return ZeroMap()
    if kind == "derivation":
        return Derivation([random_scalar(rng, m, fraction_rate=0.0) for _ in range(max(m, 1))])
    if kind == "prime_log":
        primes = rng.sample(_SMALL_PRIMES, rng.randint(1, 3))
        return PrimeLog({p: random_gaussian(rng) for p in primes})
    n = rng.randint(2, 3)
    return LinCombMap(
        [(random_gaussian(rng), random_map(rng, m, depth - 1, allow_nonadditive)) for _ in range(n)]
    )


def random_fn(rng: random.Random, pool: tuple[ScalarElem, ...] = ()) -> FnSpec:
    kind = rng.choice(["constant", "poly", "table"] if pool else ["constant", "poly"])
    if kind == "constant":
        return ConstantFn(random_gaussian(rng))
    if kind == "poly":
        return PolyInC(Poly([random_gaussian(rng) for _ in range(rng.randint(1, 3))]))
    keys = rng.sample(pool, min(len(pool), rng.randint(1, 4)))
    return TableFn({k: random_gaussian(rng) for k in keys}, random_fn(rng))


def random_representation(
    rng: random.Random,
    kmax: int,
    pool: tuple[ScalarElem, ...] = (),
    m: int = 1,
    allow_nonadditive: bool = True,
) -> Representation:
    psi = [random_fn(rng, pool) for _ in range(kmax + 1)]
    phi = [random_map(rng, m, allow_nonadditive=allow_nonadditive) for _ in range(kmax + 1)]
    return Representation(RepBlocks(psi, phi))


def random_pairs(rng: random.Random, n: int, m: int = 1, constants_only: bool = False) -> list[tuple[ScalarElem, ScalarElem]]:
    mm = 0 if constants_only else m
    return [(random_scalar(rng, mm), random_scalar(rng, mm)) for _ in range(n)]
