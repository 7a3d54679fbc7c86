"""Parser for polynomial 1-forms such as ``"(2/3)x^2 dx + y dy"``.

Grammar (``^`` binds tightest, juxtaposition means multiplication)::

    expr  := term (("+" | "-") term)*
    term  := unary (["*" | "/"] unary)*
    unary := ("+" | "-") unary | power
    power := atom ["^" INT]
    atom  := NUMBER | "x" | "y" | "dx" | "dy" | "(" expr ")"

Numbers are integers or decimals and are read exactly. Division is only
allowed by nonzero constants. Every expression evaluates to a triple
``(p0, a, b)`` meaning ``p0 + a dx + b dy``; a 1-form needs ``p0 = 0``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple, Sequence, Tuple

from .algebra import ONE, ZERO, Poly2, X, Y
from .errors import FormSyntaxError, NonRationalLiteral
from .foliation import OneForm

NON_RATIONAL = {"sqrt", "pi", "e", "i", "I", "exp", "log", "sin", "cos", "tan", "inf", "nan"}

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_]+)|(\S))")


class Token(NamedTuple):
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(Token("num", num, start))
        elif name is not None:
            out.append(Token("name", name, start))
        else:
            if op not in "+-*/^()":
                raise FormSyntaxError(f"unexpected character {op!r}", start)
            out.append(Token("op", op, start))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Val(NamedTuple):
    p0: Poly2
    a: Poly2
    b: Poly2

    @property
    def is_poly(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def __add__(self, o):
        return _Val(self.p0 + o.p0, self.a + o.a, self.b + o.b)

    def __neg__(self):
        return _Val(-self.p0, -self.a, -self.b)


def _poly(p: Poly2) -> _Val:
    return _Val(p, ZERO, ZERO)


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.toks = tokenize(text)
        self.i = 0
        self.variables = tuple(variables)

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str):
        t = self.next()
        if t.kind != "op" or t.text != op:
            raise FormSyntaxError(f"expected {op!r}", t.pos)

    def parse(self) -> _Val:
        v = self.expr()
        if self.tok.kind != "end":
            raise FormSyntaxError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return v

    def expr(self) -> _Val:
        v = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.next().text
            w = self.term()
            v = v + w if op == "+" else v + (-w)
        return v

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self) -> _Val:
        v = self.unary()
        while True:
            t = self.tok
            if t.kind == "op" and t.text in "*/":
                self.next()
                w = self.unary()
                v = self._mul(v, w, t.pos) if t.text == "*" else self._div(v, w, t.pos)
            elif self._starts_atom():
                w = self.power()
                v = self._mul(v, w, t.pos)
            else:
                return v

    def unary(self) -> _Val:
        t = self.tok
        if t.kind == "op" and t.text in "+-":
            self.next()
            v = self.unary()
            return -v if t.text == "-" else v
        return self.power()

    def power(self) -> _Val:
        base = self.atom()
        t = self.tok
        if t.kind == "op" and t.text == "^":
            self.next()
            e = self.next()
            if e.kind != "num" or not e.text.isdigit():
                raise FormSyntaxError("exponent must be a nonnegative integer literal", e.pos)
            if not base.is_poly:
                raise FormSyntaxError("cannot raise a differential to a power", t.pos)
            return _poly(base.p0 ** int(e.text))
        return base

    def atom(self) -> _Val:
        t = self.next()
        if t.kind == "num":
            return _poly(Poly2.const(Fraction(t.text)))
        if t.kind == "name":
            return self._name(t)
        if t.kind == "op" and t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        raise FormSyntaxError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    def _name(self, t: Token) -> _Val:
        name = t.text
        if name in NON_RATIONAL:
            raise NonRationalLiteral(f"non-rational literal {name!r}", t.pos)
        if name in ("dx", "dy") and "d" not in self.variables:
            return _Val(ZERO, ONE, ZERO) if name == "dx" else _Val(ZERO, ZERO, ONE)
        if all(c in self.variables for c in name):
            # juxtaposed variables, e.g. "xy"
            v = ONE
            for c in name:
                v = v * (X if c == self.variables[0] else Y)
            return _poly(v)
        raise FormSyntaxError(f"unknown name {name!r}", t.pos)

    @staticmethod
    def _mul(v: _Val, w: _Val, pos: int) -> _Val:
        if not v.is_poly and not w.is_poly:
            raise FormSyntaxError("product of two differentials", pos)
        if v.is_poly:
            v, w = w, v
        c = w.p0
        return _Val(v.p0 * c, v.a * c, v.b * c)

    @staticmethod
    def _div(v: _Val, w: _Val, pos: int) -> _Val:
        if not w.is_poly or not w.p0.is_constant() or w.p0.is_zero():
            raise FormSyntaxError("division only by nonzero constants", pos)
        c = 1 / w.p0.constant_term()
        return _Val(v.p0 * c, v.a * c, v.b * c)


def parse_poly(text: str, variables: Tuple[str, str] = ("x", "y")) -> Poly2:
    """Parse a polynomial in two variables (named ``variables``)."""
    v = _Parser(text, variables).parse()
    if not v.is_poly:
        raise FormSyntaxError("differential in a polynomial expression", 0)
    return v.p0


def parse_form(text: str) -> OneForm:
    """Parse ``"<expr> dx + <expr> dy"`` into a primitive :class:`OneForm`.

    The common factor of the coefficients is divided out and kept as
    ``removed_unit``.
    """
    v = _Parser(text, ("x", "y")).parse()
    if not v.p0.is_zero():
        raise FormSyntaxError("terms without dx or dy", 0)
    if v.a.is_zero() and v.b.is_zero():
        raise FormSyntaxError("the zero form", 0)
    return OneForm.primitivized(v.a, v.b)
