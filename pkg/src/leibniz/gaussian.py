"""Gaussian integers: canonical associates and factorization by trial division."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt, lcm

from gmpy2 import mpq

from .errors import NormBoundExceeded, ZeroInput
from .scalars import GaussianRational, ScalarElem

DEFAULT_NORM_BOUND = 10**9


@dataclass(frozen=True, order=True)
class GaussianInteger:
    re: int
    im: int = 0

    def __post_init__(self):
        object.__setattr__(self, "re", int(self.re))
        object.__setattr__(self, "im", int(self.im))

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __mul__(self, other: "GaussianInteger") -> "GaussianInteger":
        return GaussianInteger(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self) -> "GaussianInteger":
        return GaussianInteger(-self.re, -self.im)

    def __pow__(self, k: int) -> "GaussianInteger":
        out = GaussianInteger(1)
        for _ in range(k):
            out = out * self
        return out

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianInteger":
        return GaussianInteger(self.re, -self.im)

    def exact_quotient(self, d: "GaussianInteger") -> "GaussianInteger | None":
        """self / d if it is a Gaussian integer, else None."""
        n = d.norm()
        p = self * d.conjugate()
        if p.re % n or p.im % n:
            return None
        return GaussianInteger(p.re // n, p.im // n)

    def to_scalar(self) -> ScalarElem:
        return ScalarElem.const(GaussianRational(self.re, self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        im = {1: "i", -1: "-i"}.get(self.im, f"{self.im}*i")
        if not self.re:
            return im
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {im.lstrip('-')}"


ONE = GaussianInteger(1)
UNITS = (GaussianInteger(1), GaussianInteger(0, 1), GaussianInteger(-1), GaussianInteger(0, -1))


def is_unit(g: GaussianInteger) -> bool:
    return g.norm() == 1


def is_canonical(g: GaussianInteger) -> bool:
    return g.re > 0 and g.im >= 0


def canonical_associate(g: GaussianInteger) -> tuple[GaussianInteger, GaussianInteger]:
    """Return (unit, canon) with g == unit * canon, canon.re > 0, canon.im >= 0."""
    if not g:
        raise ZeroInput("zero has no canonical associate")
    for u in UNITS:
        # canon = u^-1 * g; the inverse of u is its conjugate
        canon = u.conjugate() * g
        if is_canonical(canon):
            return u, canon
    raise AssertionError("unreachable: some associate is canonical")


def _sum_of_two_squares(p: int) -> tuple[int, int]:
    for a in range(1, isqrt(p) + 1):
        b2 = p - a * a
        b = isqrt(b2)
        if b * b == b2:
            return max(a, b), min(a, b)
    raise ValueError(f"{p} is not a sum of two squares")


def _rational_prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def gaussian_primes_over(p: int) -> list[GaussianInteger]:
    """Canonical Gaussian primes dividing the rational prime p."""
    if p == 2:
        return [GaussianInteger(1, 1)]
    if p % 4 == 3:
        return [GaussianInteger(p)]
    a, b = _sum_of_two_squares(p)
    return [GaussianInteger(a, b), GaussianInteger(b, a)]


def prime_sort_key(g: GaussianInteger) -> tuple[int, int, int]:
    return g.norm(), -g.re, g.im


def valuation(g: GaussianInteger, prime: GaussianInteger) -> tuple[int, GaussianInteger]:
    """Multiplicity of prime in g, and the cofactor."""
    k = 0
    while True:
        q = g.exact_quotient(prime)
        if q is None:
            return k, g
        g = q
        k += 1


def gaussian_factorize(
    g: GaussianInteger, norm_bound: int = DEFAULT_NORM_BOUND
) -> tuple[GaussianInteger, list[tuple[GaussianInteger, int]]]:
    """Factor g as unit * prod(prime**e) over canonical Gaussian primes.

    Primes are ordered by norm, ties broken by decreasing real part.
    """
    if not g:
        raise ZeroInput("cannot factor zero")
    n = g.norm()
    if n > norm_bound:
        raise NormBoundExceeded(f"norm {n} exceeds bound {norm_bound}")
    factors = []
    rest = g
    for p in _rational_prime_factors(n):
        for prime in gaussian_primes_over(p):
            k, rest = valuation(rest, prime)
            if k:
                factors.append((prime, k))
    assert is_unit(rest), rest
    factors.sort(key=lambda f: prime_sort_key(f[0]))
    return rest, factors


def is_gaussian_prime(g: GaussianInteger) -> bool:
    if not g or is_unit(g):
        return False
    _, factors = gaussian_factorize(g, norm_bound=max(DEFAULT_NORM_BOUND, g.norm()))
    return len(factors) == 1 and factors[0][1] == 1


def split_gaussian_rational(x: GaussianRational) -> tuple[GaussianInteger, int]:
    """Write x as g / n with g a Gaussian integer and n a positive integer."""
    re, im = mpq(x.re), mpq(x.im)
    n = lcm(int(re.denominator), int(im.denominator))
    return GaussianInteger(int(re * n), int(im * n)), n
