"""Parsing of the textual polynomial syntax.

Accepted input is an integer-coefficient expression in one variable ``x``
built from integers, ``x``, parentheses, ``+``, ``-``, ``*`` and ``^`` with
non-negative integer exponents, e.g. ``x^2+x+1``, ``(x+1)-3`` or
``3*(x+1)^2+6``.  Parsing happens over the integers; reduction into a
concrete ring is the caller's business.
"""

from __future__ import annotations

import re

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|(\*\*|[-+*^()]))")


class PolynomialSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r} at offset {pos} in {text!r}")
        tokens.append(match.group(1) or match.group(2) or match.group(3))
        pos = match.end()
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial")
    return [("^" if t == "**" else t) for t in tokens]


def _trim(c: list[int]) -> list[int]:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _add(f, g, sign=1):
    out = [0] * max(len(f), len(g))
    for i, c in enumerate(f):
        out[i] += c
    for i, c in enumerate(g):
        out[i] += sign * c
    return _trim(out)


def _mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, c in enumerate(f):
        if c:
            for j, d in enumerate(g):
                out[i + j] += c * d
    return _trim(out)


def _pow(f, k):
    result = [1]
    base = f
    while k:
        if k & 1:
            result = _mul(result, base)
        base = _mul(base, base)
        k >>= 1
    return result


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := unary ('*' unary)*
    # unary  := '-' unary | power
    # power  := atom ('^' INT)?
    # atom   := INT | 'x' | '(' expr ')' | atom atom   (implicit product, e.g. 3x)

    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise PolynomialSyntaxError(f"expected {expected or 'a token'}, found {tok!r}")
        self.i += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            sign = 1 if self.take() == "+" else -1
            value = _add(value, self.term(), sign)
        return value

    def term(self):
        value = self.unary()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                value = _mul(value, self.unary())
            elif tok is not None and (tok.isdigit() or tok in ("x", "(")):
                value = _mul(value, self.power())
            else:
                return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return [-c for c in self.unary()]
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise PolynomialSyntaxError(f"exponent must be a non-negative integer, found {exp!r}")
            return _pow(base, int(exp))
        return base

    def atom(self):
        tok = self.take()
        if tok.isdigit():
            return [int(tok)]
        if tok == "x":
            return [0, 1]
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        raise PolynomialSyntaxError(f"unexpected token {tok!r}")


def parse_int_poly(text: str) -> list[int]:
    """Parse ``text`` into integer coefficients, constant term first.

    >>> parse_int_poly("x^2+x+1")
    [1, 1, 1]
    >>> parse_int_poly("(x+1)^2-3")
    [-2, 2, 1]
    """
    parser = _Parser(_tokenize(text))
    value = parser.expr()
    if parser.peek() is not None:
        raise PolynomialSyntaxError(f"trailing input at token {parser.peek()!r} in {text!r}")
    return value


def format_poly(coeffs, coeff_str=str, var="x") -> str:
    """Render coefficients (constant first) in descending powers of ``var``.

    ``coeff_str`` maps a nonzero coefficient to text; zero coefficients are
    recognised by ``coeff_str(c) == '0'``.
    """
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeff_str(coeffs[k])
        if c == "0":
            continue
        if k == 0:
            parts.append(c)
            continue
        mono = var if k == 1 else f"{var}^{k}"
        parts.append(mono if c == "1" else f"{c}*{mono}")
    return "+".join(parts) if parts else "0"
