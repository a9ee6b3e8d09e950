"""Text syntax for polynomials, derivations and endomorphisms.

Grammar (whitespace ignored)::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := atom ('^' nat)?
    atom    := rational | 'x' nat | 'd' nat | '(' expr ')'
    rational:= int ('/' nat)?
    endo    := assign (';' assign)*
    assign  := 'x' nat '->' expr

A derivation is an expression in which every term carries exactly one
partial ``d<k>``; ``x1*d1`` is the Euler derivation ``H_1``.  Variables not
mentioned in an endomorphism are mapped to themselves.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .endomorph import PolyEndo
from .liederiv import Derivation
from .polyalg import Polynomial, format_polynomial, format_scalar

Value = Union[Polynomial, Derivation]


class ParseError(ValueError):
    def __init__(self, message: str, position: Optional[int] = None, text: str = ""):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}" + (f": {text!r}" if text else ""))
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[xd])(?P<idx>\d+)|(?P<arrow>->)|(?P<op>[-+*/^();]))")


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos, text)
        start = m.start(m.lastgroup) if m.lastgroup else m.start()
        if m.group("num") is not None:
            tokens.append(("num", m.group("num"), start))
        elif m.group("var") is not None:
            tokens.append((m.group("var"), m.group("idx"), m.start("var")))
        elif m.group("arrow") is not None:
            tokens.append(("->", "->", start))
        else:
            tokens.append((m.group("op"), m.group("op"), start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.text = text
        self.n = n
        self.toks = tokenize(text)
        self.i = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: Optional[str] = None) -> Tuple[str, str, int]:
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        self.i += 1
        return tok

    def error(self, msg: str, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.text)

    def index(self, tok) -> int:
        k = int(tok[1])
        if not 1 <= k <= self.n:
            self.error(f"index {k} out of range 1..{self.n}", tok)
        return k

    # expression level
    def expr(self) -> Value:
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[0] in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = self.combine(value, rhs if op[0] == "+" else -rhs, op)
        return value

    def combine(self, a: Value, b: Value, tok) -> Value:
        if isinstance(a, Derivation) and isinstance(b, Polynomial):
            if b.is_zero():
                return a
            self.error("cannot add a polynomial to a derivation", tok)
        if isinstance(a, Polynomial) and isinstance(b, Derivation):
            if a.is_zero():
                return b
            self.error("cannot add a polynomial to a derivation", tok)
        return a + b

    def term(self) -> Value:
        value = self.factor()
        while self.peek()[0] == "*":
            tok = self.take()
            rhs = self.factor()
            if isinstance(value, Derivation) and isinstance(rhs, Derivation):
                self.error("product of two partials is not a derivation", tok)
            value = value * rhs
        return value

    def factor(self) -> Value:
        value = self.atom()
        if self.peek()[0] == "^":
            tok = self.take()
            e = self.take("num")
            if isinstance(value, Derivation):
                self.error("cannot raise a derivation to a power", tok)
            value = value ** int(e[1])
        return value

    def atom(self) -> Value:
        tok = self.peek()
        kind = tok[0]
        if kind == "num":
            self.take()
            num = int(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.peek()
                if den_tok[0] != "num":
                    self.error("malformed rational: expected denominator", den_tok)
                self.take()
                den = int(den_tok[1])
                if den == 0:
                    self.error("malformed rational: zero denominator", den_tok)
                return Polynomial.constant(self.n, Fraction(num, den))
            return Polynomial.constant(self.n, num)
        if kind == "x":
            self.take()
            return Polynomial.var(self.n, self.index(tok))
        if kind == "d":
            self.take()
            return Derivation.partial(self.n, self.index(tok))
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        self.error(f"unexpected {tok[1] or 'end of input'!r}")

    def finish(self):
        if self.peek()[0] != "eof":
            self.error(f"unexpected trailing {self.peek()[1]!r}")


def parse_poly(text: str, n: int) -> Polynomial:
    p = _Parser(text, n)
    value = p.expr()
    p.finish()
    if not isinstance(value, Polynomial):
        raise ParseError("expected a polynomial, got a derivation", 0, text)
    return value


def parse_deriv(text: str, n: int) -> Derivation:
    p = _Parser(text, n)
    value = p.expr()
    p.finish()
    if isinstance(value, Polynomial):
        if value.is_zero():
            return Derivation.zero(n)
        raise ParseError("expected a derivation (terms need a partial d<k>)", 0, text)
    return value


def parse_endo(text: str, n: int) -> PolyEndo:
    p = _Parser(text, n)
    images = [Polynomial.var(n, i) for i in range(1, n + 1)]
    seen = set()
    while True:
        tok = p.take("x")
        k = p.index(tok)
        if k in seen:
            p.error(f"x{k} assigned twice", tok)
        seen.add(k)
        p.take("->")
        value = p.expr()
        if not isinstance(value, Polynomial):
            p.error("image must be a polynomial")
        images[k - 1] = value
        if p.peek()[0] == ";":
            p.take()
            if p.peek()[0] == "eof":
                break
            continue
        break
    p.finish()
    return PolyEndo(tuple(images))


def parse(kind: str, text: str, n: int):
    """Dispatch on ``kind`` in {"poly", "deriv", "endo"}."""
    try:
        fn = {"poly": parse_poly, "deriv": parse_deriv, "endo": parse_endo}[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}") from None
    return fn(text, n)


# ---------------------------------------------------------------------------
# printing

def _coefficient_prefix(p: Polynomial) -> Tuple[str, str]:
    """Sign and multiplicative prefix for ``p * d_k``."""
    if len(p.terms) == 1:
        (alpha, c), = p.terms.items()
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = Polynomial.monomial(alpha)
        body = format_polynomial(mono) if any(alpha) else ""
        if c != 1:
            body = format_scalar(c) + ("*" + body if body else "")
        return sign, body
    return "+", f"({format_polynomial(p)})"


def format_derivation(d: Derivation) -> str:
    parts = []
    for k, a in enumerate(d.coeffs, start=1):
        if a.is_zero():
            continue
        sign, body = _coefficient_prefix(a)
        parts.append((sign, f"{body}*d{k}" if body else f"d{k}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def format_endo(sigma: PolyEndo) -> str:
    return str(sigma)
