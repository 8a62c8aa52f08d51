"""Parser for polynomial expressions such as ``X^2*Z + Y^2*(Y+Z)``."""
from __future__ import annotations

import re
from fractions import Fraction

from .hompoly import HomPoly, var_index

__all__ = ["ParseError", "NonHomogeneousError", "parse_polynomial", "parse_point"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([XYZUVWxyzuvw])|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position
        self.text = text


class NonHomogeneousError(ValueError):
    def __init__(self, degrees):
        listing = ", ".join(f"{_mono_str(e)} (degree {sum(e)})" for e in degrees)
        super().__init__(f"polynomial is not homogeneous; offending monomials: {listing}")
        self.monomials = degrees


def _mono_str(e):
    names = "XYZ"
    s = "*".join(n if p == 1 else f"{n}^{p}" for n, p in zip(names, e) if p)
    return s or "1"


# Sparse inhomogeneous polynomials as dict exponent -> Fraction during parsing.
def _add(a, b, sign=1):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + sign * c
        if out[e] == 0:
            del out[e]
    return out


def _mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
            if out[e] == 0:
                del out[e]
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError("unexpected character", pos + len(text[pos:]) - len(text[pos:].lstrip()), text)
            start = m.start(m.lastindex)
            kind = ("num", "var", "op")[m.lastindex - 1]
            self.tokens.append((kind, m.group(m.lastindex), start))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            raise ParseError(f"expected {value!r}", tok[2], self.text)

    def parse(self):
        result = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)
        return result

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok[1] in "+-" and tok[0] == "op":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        acc = _mul({(0, 0, 0): Fraction(sign)}, self.term())
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                acc = _add(acc, self.term(), 1 if tok[1] == "+" else -1)
            else:
                return acc

    def term(self):
        acc = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = _mul(acc, self.power())
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                den = self.power()
                if len(den) != 1 or (0, 0, 0) not in den:
                    raise ParseError("division only by nonzero constants", tok[2], self.text)
                acc = {e: c / den[(0, 0, 0)] for e, c in acc.items()}
            elif tok[0] in ("num", "var") or tok[1] == "(":
                acc = _mul(acc, self.power())  # implicit multiplication
            else:
                return acc

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("^", "**"):
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "num":
                raise ParseError("exponent must be a non-negative integer", exp_tok[2], self.text)
            result = {(0, 0, 0): Fraction(1)}
            for _ in range(int(exp_tok[1])):
                result = _mul(result, base)
            return result
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            return {(0, 0, 0): Fraction(int(value))}
        if kind == "var":
            e = [0, 0, 0]
            e[var_index(value)] = 1
            return {tuple(e): Fraction(1)}
        if value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if value == "-":
            return {e: -c for e, c in self.power().items()}
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input", pos, self.text)


def parse_polynomial(text: str) -> HomPoly:
    """Parse a homogeneous polynomial in X, Y, Z (U, V, W accepted as aliases)."""
    terms = _Parser(text).parse()
    if not terms:
        raise ValueError("polynomial is identically zero")
    degrees = {sum(e) for e in terms}
    if len(degrees) > 1:
        top = max(degrees, key=lambda d: sum(c != 0 for e, c in terms.items() if sum(e) == d))
        offending = sorted(e for e in terms if sum(e) != top)
        raise NonHomogeneousError(offending)
    return HomPoly(degrees.pop(), terms)


def parse_point(text: str):
    """Parse ``"a:b:c"`` with integer or rational entries."""
    parts = [p.strip() for p in text.split(":")]
    if len(parts) != 3:
        raise ValueError(f"point must have three ':'-separated coordinates: {text!r}")
    try:
        coords = tuple(Fraction(p) for p in parts)
    except ValueError as exc:
        raise ValueError(f"bad coordinate in {text!r}: {exc}") from None
    if all(c == 0 for c in coords):
        raise ValueError("the zero vector is not a projective point")
    return coords
