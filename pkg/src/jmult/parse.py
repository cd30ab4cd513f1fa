"""Text form of polynomials.

Grammar (whitespace is insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' uint)?
    base   := uint | var | '(' expr ')'
    var    := [A-Za-z][A-Za-z0-9_]*
"""

from __future__ import annotations

import re

from .errors import ExponentOverflowError, ParseError
from .ring import MAX_EXPONENT, PolyRing, Polynomial

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\*\*|[-+*^()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self) -> Polynomial:
        base = self.base()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("expected a nonnegative integer exponent", tok)
            if tok[1] > MAX_EXPONENT:
                raise ExponentOverflowError(f"exponent {tok[1]} exceeds {MAX_EXPONENT} at position {tok[2]}")
            return base ** tok[1]
        return base

    def base(self) -> Polynomial:
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return self.ring.constant(val)
        if kind == "var":
            if val not in self.ring.variables:
                raise ParseError(f"unknown variable {val!r}", self.text, pos)
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {val!r}", tok)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``text`` into a polynomial of ``ring``.

    Integer constants are reduced modulo the characteristic, so ``"-3"``
    becomes ``p - 3``.
    """
    return _Parser(text, ring).parse()


def _format_monomial(exps, names):
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    """Render with balanced coefficients, terms in decreasing monomial order."""
    if f.is_zero():
        return "0"
    field = f.ring.field
    names = f.ring.variables
    out = []
    for exps, c in f.sorted_terms():
        c = field.balanced(c)
        mono = _format_monomial(exps, names)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)
