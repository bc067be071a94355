"""Text form of trace polynomials.

Grammar (whitespace ignored)::

    poly   := sign? term (sign term)*
    term   := coef | coef '*' factors | factors
    coef   := INT ('/' INT)?
    factors:= factor ('*' factor)*
    factor := 'x' INT | 'Tr' '(' 'x' INT ('*' 'x' INT)* ')'

``format_polynomial`` writes every coefficient explicitly and lists terms in
canonical monomial order, so ``parse(format_polynomial(p)) == p``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .poly import TraceMonomial, TracePolynomial, format_monomial
from .rational import format_fraction

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d+)|(?P<tr>Tr)|(?P<op>[()*/+\-−]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "op" and value == "−":
            value = "-"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.take()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}, found {value or 'end of input'!r}", pos)

    def variable(self) -> int:
        kind, value, pos = self.take()
        if kind != "var":
            raise ParseError(f"expected a variable, found {value or 'end of input'!r}", pos)
        index = int(value[1:])
        if index < 1:
            raise ParseError("variable indices start at 1", pos)
        return index

    def parse(self) -> TracePolynomial:
        terms = []
        sign = 1
        kind, value, pos = self.peek()
        if kind == "end":
            raise ParseError("empty polynomial", pos)
        if kind == "op" and value in "+-":
            self.take()
            sign = -1 if value == "-" else 1
        terms.append(self.term(sign))
        while True:
            kind, value, pos = self.peek()
            if kind == "end":
                break
            if kind == "op" and value in "+-":
                self.take()
                terms.append(self.term(-1 if value == "-" else 1))
            else:
                raise ParseError(f"expected '+' or '-', found {value!r}", pos)
        return TracePolynomial(terms)

    def term(self, sign: int):
        coeff = Fraction(sign)
        blocks: list[tuple[int, ...]] = []
        outside: list[int] = []
        kind, value, pos = self.peek()
        need_factor = True
        if kind == "num":
            self.take()
            num = int(value)
            den = 1
            if self.peek()[:2] == ("op", "/"):
                self.take()
                dkind, dvalue, dpos = self.take()
                if dkind != "num":
                    raise ParseError("expected a denominator", dpos)
                den = int(dvalue)
                if den == 0:
                    raise ParseError("zero denominator", dpos)
            coeff *= Fraction(num, den)
            if self.peek()[:2] != ("op", "*"):
                return TraceMonomial(), coeff
            self.take()
        while need_factor:
            kind, value, pos = self.peek()
            if kind == "var":
                outside.append(self.variable())
            elif kind == "tr":
                self.take()
                self.expect_op("(")
                if self.peek()[:2] == ("op", ")"):
                    raise ParseError("empty trace block", self.peek()[2])
                word = [self.variable()]
                while self.peek()[:2] == ("op", "*"):
                    self.take()
                    word.append(self.variable())
                self.expect_op(")")
                blocks.append(tuple(word))
            else:
                raise ParseError(f"expected a factor, found {value or 'end of input'!r}", pos)
            if self.peek()[:2] == ("op", "*"):
                self.take()
            else:
                need_factor = False
        return TraceMonomial(tuple(blocks), tuple(outside)), coeff


def parse_polynomial(text: str) -> TracePolynomial:
    """Parse the polynomial DSL.

    >>> str(parse_polynomial("x1*x2 - x2*x1"))
    '1*x1*x2 - 1*x2*x1'
    """
    return _Parser(text).parse()


def format_polynomial(p: TracePolynomial) -> str:
    parts = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        mono = format_monomial(m)
        body = format_fraction(abs(c)) + ("*" + mono if mono else "")
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"
