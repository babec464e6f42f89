"""Text form of polynomials: a small recursive-descent parser and printer.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary | unary)*      # juxtaposition multiplies
    unary  := ('+' | '-') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT | INT '/' INT | NAME | '(' expr ')'

Division is only allowed by nonzero constants.
"""

from __future__ import annotations

import re

from gmpy2 import mpq

from .orders import GREVLEX
from .poly import Poly

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    def __init__(self, msg, text="", pos=0, line=None):
        self.pos = pos
        self.line = line
        where = f"col {pos + 1}" if line is None else f"line {line}, col {pos + 1}"
        super().__init__(f"{msg} ({where})")


def _tokenize(text, line=None):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip()) if text[pos:].strip() else pos
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad, line)
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(("num", m.group(1), start))
        elif m.group(2):
            toks.append(("name", m.group(2), start))
        else:
            toks.append(("op", m.group(3), start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, reg, env, line):
        self.text = text
        self.reg = reg
        self.env = env or {}
        self.line = line
        self.toks = _tokenize(text, line)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2], self.line)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            kind, v, _ = self.peek()
            if kind == "op" and v == "*":
                self.take()
                val = val * self.unary()
            elif kind == "op" and v == "/":
                tok = self.take()
                rhs = self.unary()
                if not rhs.is_constant() or not rhs:
                    self.fail("division by a non-constant or zero", tok)
                val = val / rhs.constant_term()
            elif kind in ("num", "name") or (kind == "op" and v == "("):
                val = val * self.power()
            else:
                return val

    def unary(self):
        kind, v, _ = self.peek()
        if kind == "op" and v in "+-":
            self.take()
            inner = self.unary()
            return -inner if v == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        kind, v, _ = self.peek()
        if kind == "op" and v in ("^", "**"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("exponent must be a nonnegative integer", tok)
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, v, _ = tok
        if kind == "num":
            return Poly.const(self.reg, mpq(int(v)))
        if kind == "name":
            if v in self.env:
                return self.env[v]
            if v not in self.reg:
                self.fail(f"unknown variable {v!r}", tok)
            return Poly.var(self.reg, v)
        if kind == "op" and v == "(":
            val = self.expr()
            if self.take()[1] != ")":
                self.fail("expected ')'", self.toks[self.i - 1])
            return val
        self.fail(f"unexpected {v!r}" if v else "unexpected end of input", tok)


def parse_poly(text, reg, env=None, line=None) -> Poly:
    """Parse ``text`` into a :class:`Poly` over ``reg``.

    ``env`` maps extra names to already-built polynomials (``let`` bindings
    in model files).
    """
    return _Parser(text, reg, env, line).parse()


def _format_coeff(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly, order=GREVLEX) -> str:
    if not p:
        return "0"
    names = p.reg.names
    parts = []
    for exps, c in p.sorted_items(order):
        mono = "*".join(names[i] if e == 1 else f"{names[i]}^{e}"
                        for i, e in enumerate(exps) if e)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)
