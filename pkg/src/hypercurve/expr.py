"""A small expression language for component functions and constants.

Grammar (whitespace-insensitive)::

    expr    := ['-'] term (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := atom ('^' integer)?
    atom    := number | const | ident | '(' expr ')' | func '(' expr ')'
             | '[' expr '|' expr ']'

Constants: i1, i2, j, e1, e2, pi.  Functions: exp, sin, cos, conj, re, im.
Power is non-associative ("a^2^3" is rejected) and exponents are integer
literals.  The bracket atom "[w1 | w2]" is a literal in idempotent form.

Expressions evaluate in two ways: over bicomplex values (`evaluate`), where
every operation and function acts componentwise on idempotent components,
and over plain complex scalars or numpy arrays (`evaluate_component`) for
defining the component functions f1, f2 of product-type maps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

from .errors import HypercurveError, UnboundVariableError
from .numbers import BiComplex, E1, E2, I1, I2, J, ONE

__all__ = [
    "Expr",
    "Num",
    "Const",
    "Var",
    "Neg",
    "BinOp",
    "Pow",
    "Call",
    "Idem",
    "ParseError",
    "parse",
    "evaluate",
    "evaluate_component",
    "differentiate",
    "to_string",
    "free_variables",
]

CONSTANTS = ("i1", "i2", "j", "e1", "e2", "pi")
FUNCTIONS = ("exp", "sin", "cos", "conj", "re", "im")


class ParseError(HypercurveError):
    """Syntax error, carrying the byte offset and what was expected."""

    def __init__(self, position: int, expected: str, found: str):
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(f"at offset {position}: expected {expected}, found {found!r}")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


@dataclass(frozen=True)
class Idem:
    first: "Expr"
    second: "Expr"


Expr = Union[Num, Const, Var, Neg, BinOp, Pow, Call, Idem]


# -- tokenizer -----------------------------------------------------------------

_SYMBOLS = "+-*/^()[]|"


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "ident" | symbol itself | "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _SYMBOLS:
            toks.append(_Token(c, c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] in "eE":
                k = i + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    i = k
                    while i < n and text[i].isdigit():
                        i += 1
            toks.append(_Token("num", text[start:i], start))
            continue
        if c.isalpha() or c == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            toks.append(_Token("ident", text[start:i], start))
            continue
        raise ParseError(i, "a token", c)
    toks.append(_Token("end", "end of input", n))
    return toks


# -- parser --------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.toks[self.i]

    def advance(self) -> _Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str, what: str) -> _Token:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(t.pos, what, t.text)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(t.pos, "end of input", t.text)
        return e

    def expr(self) -> Expr:
        negate = False
        if self.peek().kind == "-":
            self.advance()
            negate = True
        e: Expr = self.term()
        if negate:
            e = Neg(e)
        while self.peek().kind in ("+", "-"):
            op = self.advance().kind
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance().kind
            e = BinOp(op, e, self.factor())
        return e

    def factor(self) -> Expr:
        e = self.atom()
        if self.peek().kind == "^":
            self.advance()
            t = self.expect("num", "an integer exponent")
            try:
                exponent = int(t.text)
            except ValueError:
                raise ParseError(t.pos, "an integer exponent", t.text) from None
            e = Pow(e, exponent)
            t = self.peek()
            if t.kind == "^":
                raise ParseError(t.pos, "no further '^' (power is non-associative)", t.text)
        return e

    def atom(self) -> Expr:
        t = self.peek()
        if t.kind == "num":
            self.advance()
            return Num(float(t.text))
        if t.kind == "ident":
            self.advance()
            if t.text in FUNCTIONS:
                self.expect("(", "'(' after function name")
                arg = self.expr()
                self.expect(")", "')'")
                return Call(t.text, arg)
            if t.text in CONSTANTS:
                return Const(t.text)
            return Var(t.text)
        if t.kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")", "')'")
            return e
        if t.kind == "[":
            self.advance()
            first = self.expr()
            self.expect("|", "'|'")
            second = self.expr()
            self.expect("]", "']'")
            return Idem(first, second)
        raise ParseError(t.pos, "an operand", t.text)


def parse(text: str) -> Expr:
    """Parse an expression string into an AST."""
    return _Parser(text).parse()


# -- evaluation over bicomplex values --------------------------------------------

_BC_CONSTS = {
    "i1": I1,
    "i2": I2,
    "j": J,
    "e1": E1,
    "e2": E2,
    "pi": BiComplex(math.pi, math.pi),
}


def _bc_call(func: str, v: BiComplex) -> BiComplex:
    if func == "exp":
        return BiComplex(cmath.exp(v.w1), cmath.exp(v.w2))
    if func == "sin":
        return BiComplex(cmath.sin(v.w1), cmath.sin(v.w2))
    if func == "cos":
        return BiComplex(cmath.cos(v.w1), cmath.cos(v.w2))
    if func == "conj":
        return BiComplex(v.w1.conjugate(), v.w2.conjugate())
    if func == "re":
        return BiComplex(v.w1.real, v.w2.real)
    if func == "im":
        return BiComplex(v.w1.imag, v.w2.imag)
    raise HypercurveError(f"unknown function {func!r}")


def evaluate(ast: Expr, env: Mapping[str, BiComplex] | None = None) -> BiComplex:
    """Evaluate over bicomplex values; functions act on idempotent components."""
    env = env or {}
    if isinstance(ast, Num):
        return BiComplex(ast.value, ast.value)
    if isinstance(ast, Const):
        return _BC_CONSTS[ast.name]
    if isinstance(ast, Var):
        try:
            v = env[ast.name]
        except KeyError:
            raise UnboundVariableError(f"unbound variable {ast.name!r}") from None
        return v if isinstance(v, BiComplex) else BiComplex._coerce(v)
    if isinstance(ast, Neg):
        return -evaluate(ast.operand, env)
    if isinstance(ast, BinOp):
        a, b = evaluate(ast.left, env), evaluate(ast.right, env)
        if ast.op == "+":
            return a + b
        if ast.op == "-":
            return a - b
        if ast.op == "*":
            return a * b
        return a / b  # raises NonInvertibleError on zero-divisor denominators
    if isinstance(ast, Pow):
        return evaluate(ast.base, env) ** ast.exponent
    if isinstance(ast, Call):
        return _bc_call(ast.func, evaluate(ast.arg, env))
    if isinstance(ast, Idem):
        a, b = evaluate(ast.first, env), evaluate(ast.second, env)
        return BiComplex(a.w1, b.w2)
    raise TypeError(f"not an expression node: {ast!r}")


# -- evaluation over complex scalars / arrays ------------------------------------

_COMPONENT_CONSTS = {"i1": 1j, "pi": complex(math.pi)}

_NP_FUNCS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "conj": np.conj,
    "re": lambda v: np.asarray(v).real + 0j if isinstance(v, np.ndarray) else complex(v.real),
    "im": lambda v: np.asarray(v).imag + 0j if isinstance(v, np.ndarray) else complex(v.imag),
}


def evaluate_component(ast: Expr, env: Mapping[str, complex | np.ndarray]):
    """Evaluate over complex scalars or numpy arrays (one idempotent component).

    The idempotent-only constants (e1, e2, j, i2) and bracket literals have no
    scalar meaning and are rejected.
    """
    if isinstance(ast, Num):
        return complex(ast.value)
    if isinstance(ast, Const):
        try:
            return _COMPONENT_CONSTS[ast.name]
        except KeyError:
            raise HypercurveError(
                f"constant {ast.name!r} has no single-component value"
            ) from None
    if isinstance(ast, Var):
        try:
            return env[ast.name]
        except KeyError:
            raise UnboundVariableError(f"unbound variable {ast.name!r}") from None
    if isinstance(ast, Neg):
        return -evaluate_component(ast.operand, env)
    if isinstance(ast, BinOp):
        a = evaluate_component(ast.left, env)
        b = evaluate_component(ast.right, env)
        if ast.op == "+":
            return a + b
        if ast.op == "-":
            return a - b
        if ast.op == "*":
            return a * b
        return a / b
    if isinstance(ast, Pow):
        return evaluate_component(ast.base, env) ** ast.exponent
    if isinstance(ast, Call):
        v = evaluate_component(ast.arg, env)
        return _NP_FUNCS[ast.func](v)
    if isinstance(ast, Idem):
        raise HypercurveError("idempotent literal has no single-component value")
    raise TypeError(f"not an expression node: {ast!r}")


# -- symbolic derivative ---------------------------------------------------------


class NonDifferentiableExpr(HypercurveError):
    """The expression contains a node with no complex derivative rule."""


def differentiate(ast: Expr, var: str) -> Expr:
    """Symbolic derivative with respect to `var`, for component expressions.

    conj / re / im are not complex-differentiable and are rejected; callers
    fall back to finite differences.
    """
    if isinstance(ast, (Num, Const)):
        return Num(0.0)
    if isinstance(ast, Var):
        return Num(1.0) if ast.name == var else Num(0.0)
    if isinstance(ast, Neg):
        return Neg(differentiate(ast.operand, var))
    if isinstance(ast, BinOp):
        da, db = differentiate(ast.left, var), differentiate(ast.right, var)
        if ast.op in ("+", "-"):
            return BinOp(ast.op, da, db)
        if ast.op == "*":
            return BinOp("+", BinOp("*", da, ast.right), BinOp("*", ast.left, db))
        num = BinOp("-", BinOp("*", da, ast.right), BinOp("*", ast.left, db))
        return BinOp("/", num, Pow(ast.right, 2))
    if isinstance(ast, Pow):
        if ast.exponent == 0:
            return Num(0.0)
        db = differentiate(ast.base, var)
        inner = Pow(ast.base, ast.exponent - 1) if ast.exponent != 1 else None
        scaled = Num(float(ast.exponent)) if inner is None else BinOp(
            "*", Num(float(ast.exponent)), inner
        )
        return BinOp("*", scaled, db)
    if isinstance(ast, Call):
        da = differentiate(ast.arg, var)
        if ast.func == "exp":
            outer: Expr = Call("exp", ast.arg)
        elif ast.func == "sin":
            outer = Call("cos", ast.arg)
        elif ast.func == "cos":
            outer = Neg(Call("sin", ast.arg))
        else:
            raise NonDifferentiableExpr(f"{ast.func} has no complex derivative")
        return BinOp("*", outer, da)
    if isinstance(ast, Idem):
        raise NonDifferentiableExpr("idempotent literal in a component expression")
    raise TypeError(f"not an expression node: {ast!r}")


# -- printing and inspection ------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _paren(child: Expr, parent_prec: int, right_side: bool = False) -> str:
    s = to_string(child)
    if isinstance(child, BinOp):
        cp = _PREC[child.op]
        if cp < parent_prec or (cp == parent_prec and right_side):
            return f"({s})"
    if isinstance(child, Neg):
        return f"({s})"
    if isinstance(child, Pow) and parent_prec >= 3:
        return f"({s})"
    return s


def to_string(ast: Expr) -> str:
    """Render an AST back to parseable text."""
    if isinstance(ast, Num):
        v = ast.value
        return repr(int(v)) if v == int(v) and abs(v) < 1e15 else repr(v)
    if isinstance(ast, Const):
        return ast.name
    if isinstance(ast, Var):
        return ast.name
    if isinstance(ast, Neg):
        return "-" + _paren(ast.operand, 3)
    if isinstance(ast, BinOp):
        p = _PREC[ast.op]
        return f"{_paren(ast.left, p)} {ast.op} {_paren(ast.right, p, right_side=True)}"
    if isinstance(ast, Pow):
        return f"{_paren(ast.base, 3)}^{ast.exponent}"
    if isinstance(ast, Call):
        return f"{ast.func}({to_string(ast.arg)})"
    if isinstance(ast, Idem):
        return f"[{to_string(ast.first)} | {to_string(ast.second)}]"
    raise TypeError(f"not an expression node: {ast!r}")


def free_variables(ast: Expr) -> set[str]:
    if isinstance(ast, Var):
        return {ast.name}
    if isinstance(ast, Neg):
        return free_variables(ast.operand)
    if isinstance(ast, BinOp):
        return free_variables(ast.left) | free_variables(ast.right)
    if isinstance(ast, Pow):
        return free_variables(ast.base)
    if isinstance(ast, Call):
        return free_variables(ast.arg)
    if isinstance(ast, Idem):
        return free_variables(ast.first) | free_variables(ast.second)
    return set()
