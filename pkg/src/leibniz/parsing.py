"""Text forms of scalars and polynomials.

Grammar (no implicit multiplication)::

    expr   := term (("+" | "-") term)*
    term   := "-" term | factor (("*" | "/") factor)*
    factor := base ("^" uint)?
    base   := "(" expr ")" | "z" | int | "i" | "t1" | "t2" | "t3"

Division is only allowed by z-free factors, which covers the ``int "/" int``
literal form as well as scalar fractions such as ``t1/(t1+1)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import DegreeCapExceeded, DivisionByZero, ExpressionSyntaxError, NegativeExponent
from .poly import DEFAULT_DEGREE_CAP, Poly, degree
from .scalars import MAX_TRANSCENDENTALS, GaussianRational, MvPoly, ScalarElem

_TOKEN = re.compile(r"\s*(?:(\d+)|(t\d+|[A-Za-z_]\w*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1):
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(Token("name", m.group(2), m.start(2)))
        elif m.group(3):
            if m.group(3) not in "+-*/^()":
                raise ExpressionSyntaxError(
                    f"unexpected character {m.group(3)!r}", m.start(3), ("+", "-", "*", "/", "^", "(", ")")
                )
            tokens.append(Token("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


_BASE_EXPECTED = ("(", "z", "integer", "i", "t1", "t2", "t3")


class _Parser:
    def __init__(self, text: str, allow_z: bool, m: int, cap: int):
        self.tokens = tokenize(text)
        self.idx = 0
        self.allow_z = allow_z
        self.m = m
        self.cap = cap

    @property
    def tok(self) -> Token:
        return self.tokens[self.idx]

    def advance(self) -> Token:
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def error(self, message: str, expected=()) -> ExpressionSyntaxError:
        return ExpressionSyntaxError(message, self.tok.pos, expected)

    def check_cap(self, p: Poly, pos: int) -> Poly:
        if p and degree(p) > self.cap:
            raise DegreeCapExceeded(f"degree {degree(p)} exceeds cap {self.cap}", pos)
        return p

    def parse(self) -> Poly:
        if self.tok.kind == "end":
            raise self.error("empty expression", _BASE_EXPECTED)
        value = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected token {self.tok.text!r}", ("+", "-", "*", "/", "^", "end of input"))
        return value

    def expr(self) -> Poly:
        value = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "op":
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly:
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return -self.term()
        value = self.factor()
        while self.tok.kind == "op" and self.tok.text in ("*", "/"):
            op = self.advance()
            start = self.tok.pos
            rhs = self.factor()
            if op.text == "*":
                value = self.check_cap(value * rhs, op.pos)
            else:
                if len(rhs) > 1:
                    raise ExpressionSyntaxError("division by a polynomial in z", start, ())
                if not rhs:
                    raise DivisionByZero(f"division by zero at position {op.pos}")
                value = value.scale(rhs.coeffs[0].inverse())
        return value

    def factor(self) -> Poly:
        base = self.base()
        if self.tok.kind == "op" and self.tok.text == "^":
            caret = self.advance()
            if self.tok.kind == "op" and self.tok.text == "-":
                raise NegativeExponent("negative exponent", self.tok.pos)
            if self.tok.kind != "int":
                raise self.error("exponent must be a nonnegative integer", ("integer",))
            k = int(self.advance().text)
            if base and degree(base) * k > self.cap:
                raise DegreeCapExceeded(f"degree {degree(base) * k} exceeds cap {self.cap}", caret.pos)
            base = base**k
        return base

    def base(self) -> Poly:
        tok = self.tok
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            value = self.expr()
            if not (self.tok.kind == "op" and self.tok.text == ")"):
                raise self.error("unbalanced parenthesis", (")",))
            self.advance()
            return value
        if tok.kind == "int":
            self.advance()
            return Poly.const(int(tok.text))
        if tok.kind == "name":
            if tok.text == "z" and self.allow_z:
                self.advance()
                return Poly.z()
            if tok.text == "i":
                self.advance()
                return Poly.const(ScalarElem.gaussian(0, 1))
            if tok.text.startswith("t") and tok.text[1:].isdigit():
                j = int(tok.text[1:])
                if 1 <= j <= self.m:
                    self.advance()
                    return Poly.const(ScalarElem.t(j))
            raise self.error(f"unknown symbol {tok.text!r}", self._names())
        if tok.kind == "end":
            raise self.error("unexpected end of input", _BASE_EXPECTED)
        raise self.error(f"unexpected token {tok.text!r}", _BASE_EXPECTED)

    def _names(self) -> tuple[str, ...]:
        names = (("z",) if self.allow_z else ()) + ("i",)
        return names + tuple(f"t{j}" for j in range(1, self.m + 1))


def parse_poly(text: str, m: int = MAX_TRANSCENDENTALS, cap: int = DEFAULT_DEGREE_CAP) -> Poly:
    return _Parser(text, True, m, cap).parse()


def parse_scalar(text: str, m: int = MAX_TRANSCENDENTALS) -> ScalarElem:
    p = _Parser(text, False, m, DEFAULT_DEGREE_CAP).parse()
    return p.coeff(0)


# -- printing -------------------------------------------------------------------


def _fmt_q(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _join(terms: list[tuple[bool, str]]) -> str:
    """Join (negative, text) pairs into a signed sum."""
    if not terms:
        return "0"
    neg, text = terms[0]
    out = ("-" if neg else "") + text
    for neg, text in terms[1:]:
        out += (" - " if neg else " + ") + text
    return out


def _gaussian_terms(c: GaussianRational, mon: str) -> list[tuple[bool, str]]:
    """Signed terms for c * mon (mon may be empty)."""

    def attach(coef: str | None) -> str:
        if coef is None:
            return mon or "1"
        return f"{coef}*{mon}" if mon else coef

    re_, im_ = c.re, c.im
    if not im_:
        a = abs(re_)
        return [(re_ < 0, attach(None if a == 1 else _fmt_q(a)))]
    b = abs(im_)
    im_text = "i" if b == 1 else f"{_fmt_q(b)}*i"
    if not re_:
        return [(im_ < 0, attach(im_text))]
    if not mon:
        return [(re_ < 0, _fmt_q(abs(re_))), (im_ < 0, im_text)]
    return [(False, f"({print_gaussian(c)})*{mon}")]


def print_gaussian(c: GaussianRational) -> str:
    return _join(_gaussian_terms(c, ""))


def _monomial(e: tuple) -> str:
    parts = []
    for j, k in enumerate(e, start=1):
        if k == 1:
            parts.append(f"t{j}")
        elif k > 1:
            parts.append(f"t{j}^{k}")
    return "*".join(parts)


def _mv_terms(p: MvPoly, suffix: str = "") -> list[tuple[bool, str]]:
    terms = []
    for e in sorted(p.terms, key=lambda e: (sum(e), e), reverse=True):
        mon = "*".join(x for x in (_monomial(e), suffix) if x)
        terms.extend(_gaussian_terms(p.terms[e], mon))
    return terms


def print_mvpoly(p: MvPoly) -> str:
    return _join(_mv_terms(p))


def print_scalar(s: ScalarElem) -> str:
    if s.c is not None:
        return print_gaussian(s.c)
    if s.den.is_constant():
        return print_mvpoly(s.num)
    return f"({print_mvpoly(s.num)})/({print_mvpoly(s.den)})"


def _z_power(k: int) -> str:
    return "" if k == 0 else ("z" if k == 1 else f"z^{k}")


def print_poly(p: Poly) -> str:
    terms: list[tuple[bool, str]] = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        s = p.coeffs[k]
        if s.is_zero():
            continue
        mon = _z_power(k)
        if s.c is not None:
            terms.extend(_gaussian_terms(s.c, mon))
        elif s.den.is_constant():
            if len(s.num.terms) == 1 or not mon:
                terms.extend(_mv_terms(s.num, mon))
            else:
                terms.append((False, f"({print_mvpoly(s.num)})*{mon}"))
        else:
            frac = print_scalar(s)
            terms.append((False, f"{frac}*{mon}" if mon else frac))
    return _join(terms)
