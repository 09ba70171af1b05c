"""A small expression language for profile functions of one variable u.

Parsed once into an immutable tree, then evaluated over plain floats or
over the truncated Taylor algebra; the latter is how profile derivatives
are obtained without symbolic differentiation.

Grammar (EBNF, whitespace insignificant):

    expr     = term , { ("+" | "-") , term } ;
    term     = unary , { ("*" | "/") , unary } ;
    unary    = "-" , unary | power ;
    power    = atom , { "^" , exponent } ;
    exponent = [ "-" ] , number ;
    atom     = number | ident | ident , "(" , expr , ")" | "(" , expr , ")" ;
    ident    = lowercase letter , { lowercase letter | digit | "_" } ;

Binary operators are left-associative.  Exponents must be numeric
constants.  The identifier ``u`` is the variable; any other identifier is
a named parameter that must be bound before evaluation.  Function names:
sin, cos, sinh, cosh, exp, log, sqrt, neg.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Union

from . import taylor
from .errors import ParseError, UnboundParameter

FUNCTIONS = ("sin", "cos", "sinh", "cosh", "exp", "log", "sqrt", "neg")


@dataclass(frozen=True, slots=True)
class Const:
    value: float


@dataclass(frozen=True, slots=True)
class Var:
    """The expression variable u."""


@dataclass(frozen=True, slots=True)
class Param:
    name: str


@dataclass(frozen=True, slots=True)
class Unary:
    op: str  # one of FUNCTIONS
    arg: "Expr"


@dataclass(frozen=True, slots=True)
class Binary:
    op: str  # + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Power:
    base: "Expr"
    exponent: float  # constant by construction


Expr = Union[Const, Var, Param, Unary, Binary, Power]


# -- tokenizer ---------------------------------------------------------------

_NUMBER = re.compile(r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")
_IDENT = re.compile(r"[a-z][a-z0-9_]*")
_OPS = set("+-*/^()")


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # "number" | "ident" | op char | "eof"
    text: str
    offset: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch in " \t\r\n":
            i += 1
            continue
        if not ch.isascii():
            raise ParseError(i, ("ascii character",), found=ch)
        m = _NUMBER.match(src, i)
        if m:
            tokens.append(_Token("number", m.group(), i))
            i = m.end()
            continue
        m = _IDENT.match(src, i)
        if m:
            tokens.append(_Token("ident", m.group(), i))
            i = m.end()
            continue
        if ch in _OPS:
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(i, ("number", "identifier", "operator"), found=ch)
    # Report end-of-input errors at the end of the meaningful text.
    tokens.append(_Token("eof", "", len(src.rstrip())))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.offset, (kind,), found=tok.text)
        return self.take()

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "eof":
            raise ParseError(tok.offset, ("end of input", "operator"), found=tok.text)
        return e

    def expr(self) -> Expr:
        left = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            left = Binary(op, left, self.term())
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            left = Binary(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.peek().kind == "-":
            self.take()
            return Unary("neg", self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        while self.peek().kind == "^":
            self.take()
            base = Power(base, self.exponent())
        return base

    def exponent(self) -> float:
        sign = 1.0
        if self.peek().kind == "-":
            self.take()
            sign = -1.0
        tok = self.peek()
        if tok.kind != "number":
            raise ParseError(tok.offset, ("numeric exponent",), found=tok.text)
        self.take()
        return sign * float(tok.text)

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "number":
            self.take()
            return Const(float(tok.text))
        if tok.kind == "ident":
            self.take()
            if self.peek().kind == "(":
                if tok.text not in FUNCTIONS:
                    raise ParseError(tok.offset, tuple(FUNCTIONS), found=tok.text)
                self.take()
                arg = self.expr()
                self.expect(")")
                return Unary(tok.text, arg)
            if tok.text == "u":
                return Var()
            return Param(tok.text)
        if tok.kind == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(tok.offset, ("number", "identifier", "("), found=tok.text)


def parse(src: str) -> Expr:
    """Parse expression source; raises ParseError with a byte offset."""
    return _Parser(src).parse()


# -- printing ----------------------------------------------------------------

_LEVEL_ADD, _LEVEL_MUL, _LEVEL_NEG, _LEVEL_POW, _LEVEL_ATOM = 1, 2, 3, 4, 5


def _fmt_number(x: float) -> str:
    if float(x).is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(float(x))


def _print(e: Expr, parent_level: int) -> str:
    if isinstance(e, Const):
        s, lvl = _fmt_number(e.value), _LEVEL_ATOM
    elif isinstance(e, Var):
        s, lvl = "u", _LEVEL_ATOM
    elif isinstance(e, Param):
        s, lvl = e.name, _LEVEL_ATOM
    elif isinstance(e, Unary):
        if e.op == "neg":
            s, lvl = "-" + _print(e.arg, _LEVEL_NEG), _LEVEL_NEG
        else:
            s, lvl = f"{e.op}({_print(e.arg, 0)})", _LEVEL_ATOM
    elif isinstance(e, Power):
        exp = _fmt_number(e.exponent)
        if e.exponent < 0:
            exp = "-" + _fmt_number(-e.exponent)
        s, lvl = f"{_print(e.base, _LEVEL_ATOM)}^{exp}", _LEVEL_POW
    elif isinstance(e, Binary):
        if e.op in "+-":
            lvl = _LEVEL_ADD
            s = f"{_print(e.left, lvl)} {e.op} {_print(e.right, lvl + 1)}"
        else:
            lvl = _LEVEL_MUL
            s = f"{_print(e.left, lvl)}{e.op}{_print(e.right, lvl + 1)}"
    else:
        raise TypeError(f"not an Expr node: {e!r}")
    if lvl < parent_level:
        return f"({s})"
    return s


def to_source(e: Expr) -> str:
    """Canonical text form; parse(to_source(e)) reproduces the tree."""
    return _print(e, 0)


# -- evaluation ---------------------------------------------------------------

_UNARY_FN = {
    "sin": taylor.sin,
    "cos": taylor.cos,
    "sinh": taylor.sinh,
    "cosh": taylor.cosh,
    "exp": taylor.exp,
    "log": taylor.log,
    "sqrt": taylor.sqrt,
}


def parameters(e: Expr) -> set[str]:
    """Names of all parameters referenced by the expression."""
    if isinstance(e, Param):
        return {e.name}
    if isinstance(e, Unary):
        return parameters(e.arg)
    if isinstance(e, Power):
        return parameters(e.base)
    if isinstance(e, Binary):
        return parameters(e.left) | parameters(e.right)
    return set()


def evaluate(e: Expr, bindings: Mapping[str, float], u):
    """Evaluate over the scalar algebra of ``u`` (float in, float out;

    series in, series out).  Raises UnboundParameter or DomainError.
    """
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return u
    if isinstance(e, Param):
        try:
            return float(bindings[e.name])
        except KeyError:
            raise UnboundParameter(e.name) from None
    if isinstance(e, Unary):
        arg = evaluate(e.arg, bindings, u)
        if e.op == "neg":
            return -arg
        return _UNARY_FN[e.op](arg)
    if isinstance(e, Power):
        return taylor.powc(evaluate(e.base, bindings, u), e.exponent)
    if isinstance(e, Binary):
        a = evaluate(e.left, bindings, u)
        b = evaluate(e.right, bindings, u)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        return taylor.divide(a, b)
    raise TypeError(f"not an Expr node: {e!r}")
