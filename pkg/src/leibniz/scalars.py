"""Exact arithmetic in Q(i)(t1, ..., tm).

Rationals are ``gmpy2.mpq``.  A :class:`GaussianRational` is a pair of
rationals, an :class:`MvPoly` a sparse multivariate polynomial with Gaussian
rational coefficients, and a :class:`ScalarElem` a fraction of two such
polynomials.  Fractions are not gcd-reduced; equality is decided by
cross-multiplication.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Union

from gmpy2 import mpq

from .errors import DivisionByZero

Rational = type(mpq())

MAX_TRANSCENDENTALS = 3

Exponent = tuple  # tuple[int, ...]


def to_rational(x) -> "mpq":
    if isinstance(x, Rational):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, _RationalABC):
        return mpq(x.numerator, x.denominator) if not isinstance(x, int) else mpq(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


_Q0 = mpq(0)
_Q1 = mpq(1)


class GaussianRational:
    """a + b*i with a, b rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_rational(re)
        self.im = to_rational(im)

    @classmethod
    def _raw(cls, re, im) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Rational, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "GaussianRational") -> "GaussianRational":
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._raw(-self.re, -self.im)

    def __mul__(self, other: "GaussianRational") -> "GaussianRational":
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, _Q0)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    def norm(self) -> "mpq":
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise DivisionByZero("inverse of zero")
        return GaussianRational._raw(self.re / n, -self.im / n)

    def __truediv__(self, other: "GaussianRational") -> "GaussianRational":
        if not other.im:
            if not other.re:
                raise DivisionByZero("division by zero")
            return GaussianRational._raw(self.re / other.re, self.im / other.re)
        return self * other.inverse()

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"


GR_ZERO = GaussianRational._raw(_Q0, _Q0)
GR_ONE = GaussianRational._raw(_Q1, _Q0)


def _pad(e: tuple, m: int) -> tuple:
    return e + (0,) * (m - len(e)) if len(e) < m else e


def _needed_vars(keys: Iterable[tuple]) -> int:
    m = 0
    for e in keys:
        for j in range(len(e) - 1, m - 1, -1):
            if e[j]:
                m = j + 1
                break
    return m


class MvPoly:
    """Sparse polynomial in t1..tm over the Gaussian rationals.

    ``m`` is the number of variables actually present, so exponent vectors
    are as short as possible and a constant has ``m == 0``.
    """

    __slots__ = ("m", "terms")

    def __init__(self, terms: Mapping[tuple, GaussianRational] | None = None):
        terms = {e: c for e, c in (terms or {}).items() if c}
        m = _needed_vars(terms)
        self.terms = {_pad(e[:m], m): c for e, c in terms.items()}
        self.m = m

    @classmethod
    def _raw(cls, terms: dict, m: int) -> "MvPoly":
        obj = object.__new__(cls)
        obj.terms = terms
        obj.m = m
        return obj

    @classmethod
    def constant(cls, c: GaussianRational) -> "MvPoly":
        return cls._raw({(): c} if c else {}, 0)

    @classmethod
    def variable(cls, j: int) -> "MvPoly":
        if not 1 <= j <= MAX_TRANSCENDENTALS:
            raise ValueError(f"transcendental index must be in 1..{MAX_TRANSCENDENTALS}")
        e = (0,) * (j - 1) + (1,)
        return cls._raw({e: GR_ONE}, j)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self.m == 0

    def constant_value(self) -> GaussianRational:
        return self.terms.get((), GR_ZERO)

    def _promote(self, m: int) -> dict:
        if m == self.m:
            return self.terms
        return {_pad(e, m): c for e, c in self.terms.items()}

    @staticmethod
    def _finish(terms: dict, m: int) -> "MvPoly":
        need = _needed_vars(terms) if m else 0
        if need < m:
            terms = {e[:need]: c for e, c in terms.items()}
            m = need
        return MvPoly._raw(terms, m)

    def __add__(self, other: "MvPoly") -> "MvPoly":
        m = max(self.m, other.m)
        out = dict(self._promote(m))
        for e, c in other._promote(m).items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MvPoly._finish(out, m)

    def __neg__(self) -> "MvPoly":
        return MvPoly._raw({e: -c for e, c in self.terms.items()}, self.m)

    def __sub__(self, other: "MvPoly") -> "MvPoly":
        return self + (-other)

    def __mul__(self, other: "MvPoly") -> "MvPoly":
        if not self.terms or not other.terms:
            return MvPoly._raw({}, 0)
        m = max(self.m, other.m)
        a = self._promote(m)
        b = other._promote(m)
        out: dict = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2)) if m else ()
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        out = {e: c for e, c in out.items() if c}
        return MvPoly._finish(out, m)

    def scale(self, c: GaussianRational) -> "MvPoly":
        if not c:
            return MvPoly._raw({}, 0)
        return MvPoly._raw({e: v * c for e, v in self.terms.items()}, self.m)

    def partial(self, j: int) -> "MvPoly":
        """Partial derivative with respect to t_j (1-based)."""
        if j > self.m:
            return MvPoly._raw({}, 0)
        out = {}
        for e, c in self.terms.items():
            k = e[j - 1]
            if k:
                e2 = e[: j - 1] + (k - 1,) + e[j:]
                out[e2] = c * GaussianRational._raw(mpq(k), _Q0)
        return MvPoly._finish(out, self.m)

    def leading(self) -> tuple[tuple, GaussianRational]:
        """Lex-leading exponent and coefficient (lex order is multiplicative)."""
        e = max(self.terms)
        return e, self.terms[e]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MvPoly):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self) -> str:
        return f"MvPoly({self.terms!r})"


_MV_ONE = MvPoly.constant(GR_ONE)
_MV_ZERO = MvPoly._raw({}, 0)

ScalarLike = Union["ScalarElem", GaussianRational, int, Fraction, "mpq"]


class ScalarElem:
    """Element of Q(i)(t1..tm) stored as num/den.

    Constants are kept with ``den == 1`` and cached in ``c`` so the common
    Gaussian-rational case skips the polynomial machinery.
    """

    __slots__ = ("num", "den", "c")

    def __init__(self, num: MvPoly, den: MvPoly | None = None):
        if den is None:
            den = _MV_ONE
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        self._set(num, den)

    def _set(self, num: MvPoly, den: MvPoly) -> None:
        if num.is_zero():
            num, den = _MV_ZERO, _MV_ONE
        elif den.m == 0:
            d = den.constant_value()
            if d != GR_ONE:
                num = num.scale(d.inverse())
            den = _MV_ONE
        else:
            ed, ld = den.leading()
            en, ln = num.leading()
            if en == ed and num == den.scale(ln / ld):
                num, den = MvPoly.constant(ln / ld), _MV_ONE
            elif ld != GR_ONE:
                inv = ld.inverse()
                num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den
        self.c = num.constant_value() if (num.m == 0 and den.m == 0) else None

    @classmethod
    def const(cls, c: GaussianRational) -> "ScalarElem":
        obj = object.__new__(cls)
        obj.num = MvPoly.constant(c)
        obj.den = _MV_ONE
        obj.c = c
        return obj

    @classmethod
    def of(cls, x: ScalarLike) -> "ScalarElem":
        if isinstance(x, ScalarElem):
            return x
        if isinstance(x, GaussianRational):
            return cls.const(x)
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact scalars")
        return cls.const(GaussianRational(to_rational(x), 0))

    @classmethod
    def gaussian(cls, re=0, im=0) -> "ScalarElem":
        return cls.const(GaussianRational(re, im))

    @classmethod
    def t(cls, j: int) -> "ScalarElem":
        return cls(MvPoly.variable(j))

    # -- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return self.c is not None and not self.c

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_constant(self) -> bool:
        """True when the element lies in Q(i)."""
        return self.c is not None

    def is_real_rational(self) -> bool:
        return self.c is not None and not self.c.im

    def nvars(self) -> int:
        return max(self.num.m, self.den.m)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: ScalarLike) -> "ScalarElem":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.c is not None and o.c is not None:
            return ScalarElem.const(self.c + o.c)
        if self.den == o.den:
            return ScalarElem(self.num + o.num, self.den)
        return ScalarElem(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "ScalarElem":
        if self.c is not None:
            return ScalarElem.const(-self.c)
        obj = object.__new__(ScalarElem)
        obj.num, obj.den, obj.c = -self.num, self.den, None
        return obj

    def __sub__(self, other: ScalarLike) -> "ScalarElem":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other: ScalarLike) -> "ScalarElem":
        return _coerce(other) - self

    def __mul__(self, other: ScalarLike) -> "ScalarElem":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.c is not None and o.c is not None:
            return ScalarElem.const(self.c * o.c)
        return ScalarElem(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "ScalarElem":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.c is not None:
            return ScalarElem.const(self.c.inverse())
        return ScalarElem(self.den, self.num)

    def __truediv__(self, other: ScalarLike) -> "ScalarElem":
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise DivisionByZero("division by zero")
        if self.c is not None and o.c is not None:
            return ScalarElem.const(self.c / o.c)
        return ScalarElem(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: ScalarLike) -> "ScalarElem":
        return _coerce(other) / self

    def __pow__(self, k: int) -> "ScalarElem":
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = ONE
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.c is not None and o.c is not None:
            return self.c == o.c
        return self.num * o.den == o.num * self.den

    def __hash__(self) -> int:
        if self.c is not None:
            return hash(((), self.c))
        en, ln = self.num.leading()
        ed, ld = self.den.leading()
        m = max(len(en), len(ed))
        diff = tuple(a - b for a, b in zip(_pad(en, m), _pad(ed, m)))
        while diff and not diff[-1]:
            diff = diff[:-1]
        r = ln / ld
        return hash((diff, r)) if diff else hash(((), r))

    # -- calculus on the transcendentals ------------------------------------

    def partial(self, j: int) -> "ScalarElem":
        """d/dt_j by the quotient rule."""
        if self.c is not None:
            return ZERO
        dn = self.num.partial(j)
        dd = self.den.partial(j)
        return ScalarElem(dn * self.den - self.num * dd, self.den * self.den)

    def conjugate_constant(self) -> "ScalarElem":
        if self.c is None:
            raise ValueError("conjugate is only defined on Q(i) here")
        return ScalarElem.const(self.c.conjugate())

    def __complex__(self) -> complex:
        if self.c is None:
            raise TypeError("transcendental scalar has no numeric value")
        return complex(self.c)

    def __str__(self) -> str:
        from .parsing import print_scalar

        return print_scalar(self)

    def __repr__(self) -> str:
        return f"ScalarElem({self})"


def _coerce(x):
    if isinstance(x, ScalarElem):
        return x
    if isinstance(x, (int, GaussianRational, Fraction, Rational)):
        return ScalarElem.of(x)
    return NotImplemented


ZERO = ScalarElem.const(GR_ZERO)
ONE = ScalarElem.const(GR_ONE)
I = ScalarElem.gaussian(0, 1)


def scalar_arith(lhs: ScalarElem, rhs: ScalarElem, kind: str) -> ScalarElem:
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    if kind == "div":
        return lhs / rhs
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def scalar_eq(lhs: ScalarElem, rhs: ScalarElem) -> bool:
    return lhs == rhs
