"""Single-variable arithmetic expressions with exact symbolic derivatives.

Grammar (whitespace-insensitive, the only variable is ``x``)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?          # right-associative, binds tighter than '-'
    atom    := NUMBER | 'x' | 'pi' | FUNC '(' expr ')' | '(' expr ')'
    FUNC    := sin | cos | exp | log | sqrt

``-x^2`` is ``-(x^2)`` and ``2^3^2`` is ``2^(3^2)``.  Implicit
multiplication (``2x``) is rejected.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from typing import Callable, Union

from .errors import (
    EvaluationDomainError,
    ExprSyntaxError,
    InsufficientDerivativeOrder,
    NonDifferentiable,
)
from .tables import FunctionOracle, Rigor, sampled_sup

__all__ = [
    "Const", "Var", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call", "Expr",
    "FUNCTIONS", "parse", "to_text", "differentiate", "simplify", "compile_expr",
    "to_oracle", "evaluate",
]

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt")


# --------------------------------------------------------------------- nodes

@dataclass(frozen=True)
class Const:
    value: float


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    """``left / right``; evaluation guards against a zero denominator."""

    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: "Expr"


@dataclass(frozen=True)
class Call:
    """Unary function application; ``log`` and ``sqrt`` carry domain guards."""

    name: str
    arg: "Expr"

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown function {self.name!r}")


Expr = Union[Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call]

X = Var()
ZERO = Const(0.0)
ONE = Const(1.0)


# -------------------------------------------------------------------- parser

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Token:
    kind: str      # 'num', 'ident', an operator character, or 'end'
    text: str
    offset: int    # byte offset into the UTF-8 source


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    byte_offset = lambda i: len(text[:i].encode("utf-8"))  # noqa: E731
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            tokens.append(_Token("end", "", byte_offset(pos)))
            return tokens
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text,
                                  byte_offset(pos), {"number", "x", "function", "(", "-"})
        kind = m.lastgroup
        tok = m.group(kind)
        start = m.start(kind)
        tokens.append(_Token(tok if kind == "op" else kind, tok, byte_offset(start)))
        pos = m.end()


class _Parser:
    _ATOM_START = {"number", "x", "pi", "function", "(", "-"}

    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def tok(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, expected):
        raise ExprSyntaxError(message, self.text, self.tok.offset, expected)

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            # a number or identifier directly after an operand is implicit multiplication
            self.fail(f"unexpected {self.tok.text!r}", {"+", "-", "*", "/", "^", "end of input"})
        return e

    def expr(self):
        e = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self):
        e = self.unary()
        while self.tok.kind in ("*", "/"):
            op = self.advance().kind
            rhs = self.unary()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def unary(self):
        if self.tok.kind == "-":
            self.advance()
            arg = self.unary()
            if isinstance(arg, Const):
                return Const(-arg.value)
            return Neg(arg)
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "^":
            self.advance()
            return Pow(base, self.unary())
        return base

    def atom(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Const(float(tok.text))
        if tok.kind == "ident":
            self.advance()
            if tok.text == "x":
                return X
            if tok.text == "pi":
                return Const(math.pi)
            if tok.text in FUNCTIONS:
                if self.tok.kind != "(":
                    self.fail(f"function {tok.text!r} needs an argument", {"("})
                self.advance()
                arg = self.expr()
                self.expect(")")
                return Call(tok.text, arg)
            raise ExprSyntaxError(f"unknown identifier {tok.text!r}", self.text, tok.offset,
                                  {"x", "pi", *FUNCTIONS})
        if tok.kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        self.fail(f"unexpected {what}", self._ATOM_START)

    def expect(self, kind):
        if self.tok.kind != kind:
            what = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            self.fail(f"unexpected {what}", {kind})
        self.advance()


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# ------------------------------------------------------------------- printer

def _prec(e) -> int:
    if isinstance(e, (Add, Sub)):
        return 1
    if isinstance(e, (Mul, Div)):
        return 2
    if isinstance(e, Neg) or (isinstance(e, Const) and math.copysign(1.0, e.value) < 0):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def _wrap(e, at_least) -> str:
    s = to_text(e)
    return s if _prec(e) >= at_least else f"({s})"


def to_text(e: Expr) -> str:
    """Canonical text; ``parse(to_text(e)) == e`` for parser-produced trees."""
    if isinstance(e, Const):
        v = e.value
        if v == math.pi:
            return "pi"
        if v == int(v) and abs(v) < 1e15 and not (v == 0.0 and math.copysign(1.0, v) < 0):
            return str(int(v))
        return repr(v)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Neg):
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, (Add, Sub)):
        op = " + " if isinstance(e, Add) else " - "
        return _wrap(e.left, 1) + op + _wrap(e.right, 2)
    if isinstance(e, (Mul, Div)):
        op = " * " if isinstance(e, Mul) else " / "
        return _wrap(e.left, 2) + op + _wrap(e.right, 3)
    if isinstance(e, Pow):
        return _wrap(e.base, 5) + "^" + _wrap(e.exponent, 3)
    if isinstance(e, Call):
        return f"{e.name}({to_text(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


# ------------------------------------------------- simplifying constructors

def _is(e, value) -> bool:
    return isinstance(e, Const) and e.value == value


def _neg(a):
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _add(a, b):
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is(a, 0.0):
        return b
    if _is(b, 0.0):
        return a
    return Add(a, b)


def _sub(a, b):
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is(b, 0.0):
        return a
    if _is(a, 0.0):
        return _neg(b)
    return Sub(a, b)


def _mul(a, b):
    if isinstance(b, Const) and not isinstance(a, Const):
        a, b = b, a
    if isinstance(a, Const):
        if isinstance(b, Const):
            return Const(a.value * b.value)
        if a.value == 0.0:
            return ZERO
        if a.value == 1.0:
            return b
        if a.value == -1.0:
            return _neg(b)
        if isinstance(b, Mul) and isinstance(b.left, Const):
            return _mul(Const(a.value * b.left.value), b.right)
    return Mul(a, b)


def _div(a, b):
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0.0:
        return Const(a.value / b.value)
    if _is(a, 0.0):
        return ZERO
    if _is(b, 1.0):
        return a
    return Div(a, b)


def _pow(a, b):
    if _is(b, 0.0):
        return ONE
    if _is(b, 1.0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        try:
            return Const(_power(a.value, b.value))
        except (ValueError, ZeroDivisionError, OverflowError):
            pass
    return Pow(a, b)


def _call(name, a):
    if isinstance(a, Const):
        try:
            return Const(_FUNCS[name](a.value))
        except (ValueError, OverflowError):
            pass
    return Call(name, a)


_SMART = dict(neg=_neg, add=_add, sub=_sub, mul=_mul, div=_div, pow=_pow, call=_call)
_RAW = dict(neg=Neg, add=Add, sub=Sub, mul=Mul, div=Div, pow=Pow, call=Call)


def simplify(e: Expr) -> Expr:
    """Rebuild bottom-up with constant folding and identity elimination."""
    return _rebuild(e, _SMART)


def _rebuild(e, k):
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Neg):
        return k["neg"](_rebuild(e.arg, k))
    if isinstance(e, Call):
        return k["call"](e.name, _rebuild(e.arg, k))
    if isinstance(e, Pow):
        return k["pow"](_rebuild(e.base, k), _rebuild(e.exponent, k))
    op = {Add: "add", Sub: "sub", Mul: "mul", Div: "div"}[type(e)]
    return k[op](_rebuild(e.left, k), _rebuild(e.right, k))


# ----------------------------------------------------------- differentiation

def _d(e, k):
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Neg):
        return k["neg"](_d(e.arg, k))
    if isinstance(e, Add):
        return k["add"](_d(e.left, k), _d(e.right, k))
    if isinstance(e, Sub):
        return k["sub"](_d(e.left, k), _d(e.right, k))
    if isinstance(e, Mul):
        u, v = e.left, e.right
        return k["add"](k["mul"](_d(u, k), v), k["mul"](u, _d(v, k)))
    if isinstance(e, Div):
        u, v = e.left, e.right
        du = k["div"](_d(u, k), v)
        if isinstance(v, Const):
            return du
        return k["sub"](du, k["div"](k["mul"](u, _d(v, k)), k["pow"](v, Const(2.0))))
    if isinstance(e, Pow):
        u, v = e.base, e.exponent
        if isinstance(v, Const):
            return k["mul"](k["mul"](v, k["pow"](u, Const(v.value - 1.0))), _d(u, k))
        if isinstance(u, Const):
            return k["mul"](k["mul"](e, k["call"]("log", u)), _d(v, k))
        # u^v * (v' log u + v u' / u)
        return k["mul"](e, k["add"](k["mul"](_d(v, k), k["call"]("log", u)),
                                    k["div"](k["mul"](v, _d(u, k)), u)))
    if isinstance(e, Call):
        u = e.arg
        du = _d(u, k)
        if e.name == "sin":
            return k["mul"](k["call"]("cos", u), du)
        if e.name == "cos":
            return k["neg"](k["mul"](k["call"]("sin", u), du))
        if e.name == "exp":
            return k["mul"](e, du)
        if e.name == "log":
            return k["div"](du, u)
        if e.name == "sqrt":
            return k["div"](du, k["mul"](Const(2.0), e))
    raise TypeError(f"not an expression node: {e!r}")


@functools.lru_cache(maxsize=4096)
def differentiate(e: Expr, k: int = 1, simplified: bool = True) -> Expr:
    """Symbolic k-th derivative with respect to ``x`` (memoized per tree and k)."""
    if k < 1:
        raise ValueError("derivative order must be >= 1")
    prev = e if k == 1 else differentiate(e, k - 1, simplified)
    return _d(prev, _SMART if simplified else _RAW)


# ---------------------------------------------------------------- evaluation

def _power(b, p):
    if p == int(p) and abs(p) < 2 ** 31:
        return b ** int(p)
    return math.pow(b, p)


def _guarded_log(v):
    if v <= 0.0:
        raise ValueError("log of nonpositive value")
    return math.log(v)


def _guarded_sqrt(v):
    if v < 0.0:
        raise ValueError("sqrt of negative value")
    return math.sqrt(v)


_FUNCS = {"sin": math.sin, "cos": math.cos, "exp": math.exp,
          "log": _guarded_log, "sqrt": _guarded_sqrt}


def _compile(e):
    if isinstance(e, Const):
        c = e.value
        return lambda x: c
    if isinstance(e, Var):
        return lambda x: x
    if isinstance(e, Neg):
        a = _compile(e.arg)
        return lambda x: -a(x)
    if isinstance(e, Call):
        a = _compile(e.arg)
        fn = _FUNCS[e.name]
        return lambda x: fn(a(x))
    if isinstance(e, Pow):
        b = _compile(e.base)
        if isinstance(e.exponent, Const):
            p = e.exponent.value
            if p == int(p) and abs(p) < 2 ** 31:
                n = int(p)
                return lambda x: b(x) ** n
            return lambda x: math.pow(b(x), p)
        q = _compile(e.exponent)
        return lambda x: _power(b(x), q(x))
    left, right = _compile(e.left), _compile(e.right)
    if isinstance(e, Add):
        return lambda x: left(x) + right(x)
    if isinstance(e, Sub):
        return lambda x: left(x) - right(x)
    if isinstance(e, Mul):
        return lambda x: left(x) * right(x)
    if isinstance(e, Div):
        return lambda x: left(x) / right(x)
    raise TypeError(f"not an expression node: {e!r}")


_CODEGEN_NS = {"_sin": math.sin, "_cos": math.cos, "_exp": math.exp,
               "_log": _guarded_log, "_sqrt": _guarded_sqrt,
               "_mpow": math.pow, "_power": _power}


def _codegen(e):
    """Straight-line Python for ``e``, one local per distinct subtree."""
    lines = []
    names = {}

    def emit(node):
        if isinstance(node, Const):
            return f"({node.value!r})"
        if isinstance(node, Var):
            return "x"
        if node in names:
            return names[node]
        if isinstance(node, Neg):
            expr = f"-{emit(node.arg)}"
        elif isinstance(node, Call):
            expr = f"_{node.name}({emit(node.arg)})"
        elif isinstance(node, Pow):
            b = emit(node.base)
            p = node.exponent
            if isinstance(p, Const) and p.value == int(p.value) and abs(p.value) < 2 ** 31:
                expr = f"{b} ** ({int(p.value)})"
            elif isinstance(p, Const):
                expr = f"_mpow({b}, {p.value!r})"
            else:
                expr = f"_power({b}, {emit(p)})"
        else:
            op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(node)]
            expr = f"{emit(node.left)} {op} {emit(node.right)}"
        name = f"t{len(names)}"
        lines.append(f"    {name} = {expr}")
        names[node] = name
        return name

    result = emit(e)
    src = "def _f(x):\n" + "".join(line + "\n" for line in lines) + f"    return {result}\n"
    ns = dict(_CODEGEN_NS)
    exec(compile(src, "<genocchi-expr>", "exec"), ns)
    return ns["_f"]


def compile_expr(e: Expr, error: type = EvaluationDomainError,
                 codegen: bool = True) -> Callable[[float], float]:
    """Fast evaluator; domain violations surface as ``error`` at call time.

    ``codegen=False`` selects the slower closure-tree evaluator.
    """
    raw = _codegen(e) if codegen else _compile(e)
    text = None

    def f(x: float) -> float:
        nonlocal text
        try:
            v = raw(x)
        except (ValueError, ZeroDivisionError, OverflowError) as exc:
            text = text or to_text(e)
            raise error(f"cannot evaluate {text} at x={x!r}: {exc}") from None
        return v

    return f


def evaluate(e: Expr, x: float) -> float:
    return compile_expr(e)(x)


def to_oracle(e: Expr | str, max_order: int = 4) -> FunctionOracle:
    """Oracle with symbolic derivatives up to ``max_order``.

    ``sup_bound(k, I)`` is exact and rigorous when the k-th derivative folds
    to a constant; otherwise it is 1.1 times a 1024-point grid max, flagged
    as sampled.
    """
    if isinstance(e, str):
        e = parse(e)
    if max_order < 0:
        raise ValueError("max_order must be nonnegative")
    trees = [e] + [differentiate(e, k) for k in range(1, max_order + 1)]
    funcs = tuple(compile_expr(t, EvaluationDomainError if k == 0 else NonDifferentiable)
                  for k, t in enumerate(trees))

    def sup_bound(k: int, interval: tuple[float, float]) -> tuple[float, Rigor]:
        if k > max_order:
            raise InsufficientDerivativeOrder(k, max_order)
        lo, hi = interval
        t = trees[k]
        if isinstance(t, Const):
            return abs(t.value), Rigor.RIGOROUS
        return sampled_sup(funcs[k], lo, hi), Rigor.SAMPLED

    return FunctionOracle(funcs, sup_bound, label=to_text(e))
