"""Curve mini-language.

Grammar (whitespace is insignificant; every choice is decided by one token)::

    curve     := "poly" ":" rational ("," rational)* domain?
               | "implicit" ":" expr domain?
               | "pow" ":" INT domain?
    domain    := "@" ("[" | "(") rational "," rational ("]" | ")")
    rational  := "-"? INT ("/" INT)?
    expr      := term (("+" | "-") term)*
    term      := unary (("*" | "/") unary)*
    unary     := "-" unary | power
    power     := atom ("^" INT)?
    atom      := INT | "x" | "y" | "(" expr ")"

Division is only allowed by a nonzero constant. The domain defaults to [0,1].
"""

from __future__ import annotations

import re
from fractions import Fraction

from .curves import BivariatePoly, Curve, Implicit, PolyGraph, PowGraph
from .exact import IntervalQ, closed, rational_str


class CurveSyntaxError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        super().__init__(f"{message} at position {pos}" + (f" in {text!r}" if text else ""))
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]+)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.group(0).strip() == "":
            break
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message: str):
        raise CurveSyntaxError(message, self.tok[2], self.text)

    def accept(self, value: str) -> bool:
        if self.tok[0] in ("op", "name") and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            found = self.tok[1] or "end of input"
            self.error(f"expected {value!r}, found {found!r}")

    def integer(self) -> int:
        if self.tok[0] != "int":
            self.error("expected an integer")
        value = int(self.tok[1])
        self.i += 1
        return value

    def rational(self) -> Fraction:
        sign = -1 if self.accept("-") else 1
        num = self.integer()
        if self.accept("/"):
            pos = self.tok[2]
            den = self.integer()
            if den == 0:
                raise CurveSyntaxError("zero denominator", pos, self.text)
            return Fraction(sign * num, den)
        return Fraction(sign * num)

    # -- curve level --

    def curve(self) -> Curve:
        if self.tok[0] != "name":
            self.error("expected a curve kind (poly, implicit, pow)")
        kind = self.tok[1]
        self.i += 1
        self.expect(":")
        if kind == "poly":
            coeffs = [self.rational()]
            while self.accept(","):
                coeffs.append(self.rational())
            body = PolyGraph(tuple(coeffs))
        elif kind == "implicit":
            start = self.tok[2]
            poly = self.expr()
            try:
                body = Implicit(poly)
            except ValueError as exc:
                raise CurveSyntaxError(str(exc), start, self.text) from None
        elif kind == "pow":
            pos = self.tok[2]
            base = self.integer()
            if base < 2:
                raise CurveSyntaxError("pow base must be >= 2", pos, self.text)
            body = PowGraph(base)
        else:
            raise CurveSyntaxError(f"unknown curve kind {kind!r}", self.tokens[self.i - 2][2], self.text)
        domain = self.domain() if self.accept("@") else closed(0, 1)
        if self.tok[0] != "end":
            self.error("unexpected trailing input")
        return Curve(body, domain)

    def domain(self) -> IntervalQ:
        if self.accept("["):
            closed_lo = True
        elif self.accept("("):
            closed_lo = False
        else:
            self.error("expected '[' or '('")
        pos = self.tok[2]
        lo = self.rational()
        self.expect(",")
        hi = self.rational()
        if self.accept("]"):
            closed_hi = True
        elif self.accept(")"):
            closed_hi = False
        else:
            self.error("expected ']' or ')'")
        try:
            return IntervalQ(lo, hi, closed_lo, closed_hi)
        except ValueError as exc:
            raise CurveSyntaxError(str(exc), pos, self.text) from None

    # -- polynomial expressions --

    def expr(self) -> BivariatePoly:
        acc = self.term()
        while True:
            if self.accept("+"):
                acc = acc + self.term()
            elif self.accept("-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self) -> BivariatePoly:
        acc = self.unary()
        while True:
            if self.accept("*"):
                acc = acc * self.unary()
            elif self.tok[1] == "/" and self.tok[0] == "op":
                pos = self.tok[2]
                self.i += 1
                divisor = self.unary()
                const = divisor.as_dict()
                if set(const) - {(0, 0)} or not const:
                    raise CurveSyntaxError("division only by a nonzero constant", pos, self.text)
                acc = acc * BivariatePoly.constant(1 / const[(0, 0)])
            else:
                return acc

    def unary(self) -> BivariatePoly:
        if self.accept("-"):
            return -self.unary()
        return self.power()

    def power(self) -> BivariatePoly:
        base = self.atom()
        if self.accept("^"):
            return base ** self.integer()
        return base

    def atom(self) -> BivariatePoly:
        kind, value, _ = self.tok
        if kind == "int":
            self.i += 1
            return BivariatePoly.constant(int(value))
        if kind == "name" and value in ("x", "y"):
            self.i += 1
            return BivariatePoly.from_dict({(1, 0) if value == "x" else (0, 1): 1})
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        self.error("expected a number, x, y or '('")


def parse_curve(spec: str) -> Curve:
    """Parse a curve spec such as ``"poly:0,0,1@[0,1]"`` or ``"implicit:x*y-1@[1/3,3]"``."""
    return _Parser(spec).curve()


def _format_monomial(i: int, j: int) -> str:
    parts = []
    if i:
        parts.append("x" if i == 1 else f"x^{i}")
    if j:
        parts.append("y" if j == 1 else f"y^{j}")
    return "*".join(parts)


def format_poly(poly: BivariatePoly) -> str:
    out = []
    for (i, j), c in poly.terms:
        mono = _format_monomial(i, j)
        mag = abs(c)
        if not mono:
            body = rational_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{rational_str(mag)}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+" if c > 0 else "-") + body)
    return "".join(out)


def format_curve(c: Curve) -> str:
    """Canonical spec string; ``parse_curve(format_curve(c)) == c``."""
    kind = c.kind
    if isinstance(kind, PolyGraph):
        body = "poly:" + ",".join(rational_str(v) for v in kind.coeffs)
    elif isinstance(kind, Implicit):
        body = "implicit:" + format_poly(kind.poly)
    else:
        body = f"pow:{kind.base}"
    return f"{body}@{c.domain}"
