"""Text syntax for polynomials and rational functions over F_q.

Grammar (whitespace is ignored)::

    expr  := poly | poly "/" poly
    poly  := term ("+" term)* | "(" poly ")"
    term  := coeff | coeff "*"? mono | mono
    mono  := "X" ("^" nat)?
    coeff := integer                      (reduced mod p)
           | "[" c0 "," ... "," c_{nu-1} "]"  (F_{p^nu}, low-to-high digits)

Bracket coefficients must have exactly nu entries, each in 0..p-1.
"""

from __future__ import annotations

from .errors import CoefficientOutOfField, ExprSyntaxError
from .ffield import FiniteField
from .funcfield import Poly, RationalFunction


class _Parser:
    def __init__(self, text: str, field: FiniteField):
        self.text = text
        self.pos = 0
        self.F = field

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ExprSyntaxError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ExprSyntaxError("expected a number", start)
        return int(self.text[start:self.pos])

    def coeff(self) -> int:
        F = self.F
        if self.peek() == "[":
            start = self.pos
            self.pos += 1
            digits = [self.nat()]
            while self.peek() == ",":
                self.pos += 1
                digits.append(self.nat())
            self.expect("]")
            if len(digits) != F.deg or any(d >= F.p for d in digits):
                raise CoefficientOutOfField(
                    f"{self.text[start:self.pos]} is not an element of GF({F.p}^{F.deg})"
                    f" (need {F.deg} digits in 0..{F.p - 1}, position {start})"
                )
            return F.from_digits(digits)
        return F.scalar(self.nat())

    def mono(self) -> int:
        self.expect("X")
        if self.peek() == "^":
            self.pos += 1
            return self.nat()
        return 1

    def term(self) -> tuple[int, int]:
        ch = self.peek()
        if ch == "X":
            return 1, self.mono()
        if ch.isdigit() or ch == "[":
            c = self.coeff()
            if self.peek() == "*":
                self.pos += 1
                return c, self.mono()
            if self.peek() == "X":
                return c, self.mono()
            return c, 0
        raise ExprSyntaxError(f"unexpected {ch or 'end of input'!r}", self.pos)

    def poly(self) -> Poly:
        if self.peek() == "(":
            self.pos += 1
            out = self.poly()
            self.expect(")")
            return out
        terms = [self.term()]
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.term())
        codes = [0] * (max(e for _, e in terms) + 1)
        for c, e in terms:
            codes[e] = self.F.add(codes[e], c)
        return Poly(self.F, tuple(codes))

    def expr(self):
        num = self.poly()
        if self.peek() == "/":
            self.pos += 1
            den = self.poly()
            if den.is_zero():
                raise ExprSyntaxError("zero denominator", self.pos)
            out = RationalFunction(num, den)
        else:
            out = num
        if self.peek():
            raise ExprSyntaxError(f"trailing input {self.peek()!r}", self.pos)
        return out


def parse_poly(text: str, field: FiniteField) -> Poly | RationalFunction:
    """Poly, or RationalFunction when the text contains '/'."""
    return _Parser(text, field).expr()


def parse_rational(text: str, field: FiniteField) -> RationalFunction:
    out = parse_poly(text, field)
    return out if isinstance(out, RationalFunction) else RationalFunction.of(out)


def format_coeff(F: FiniteField, code: int) -> str:
    if F.deg == 1:
        return str(code)
    return "[" + ",".join(map(str, F.digits(code))) + "]"


def format_poly(g: Poly) -> str:
    F = g.field
    if g.is_zero():
        return "0"
    parts = []
    for e in range(g.degree, -1, -1):
        c = g.codes[e]
        if c == 0:
            continue
        mono = "" if e == 0 else ("X" if e == 1 else f"X^{e}")
        if not mono:
            parts.append(format_coeff(F, c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{format_coeff(F, c)}*{mono}")
    return "+".join(parts)


def format_rational(u: RationalFunction) -> str:
    def wrapped(g):
        s = format_poly(g)
        return f"({s})" if "+" in s else s

    if u.den.is_one():
        return format_poly(u.num)
    return f"{wrapped(u.num)}/{wrapped(u.den)}"
