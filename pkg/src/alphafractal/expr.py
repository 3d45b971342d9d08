"""One-variable arithmetic expressions.

Germ, base and composition functions are supplied as text such as
``"x^3 + x"`` or ``"1/(x+1)"``.  Grammar, loosest to tightest::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | 'x' | NAME '(' expr ')' | '(' expr ')'

``-x^2`` therefore means ``-(x^2)`` and ``2^-x`` is accepted.  Trees are
immutable and evaluate elementwise on numpy arrays.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .exceptions import ArityMismatch, ExprDomainError, ExprSyntaxError, UnknownIdentifier

__all__ = [
    "FunctionExpr",
    "Num",
    "Var",
    "Neg",
    "BinOp",
    "Call",
    "parse_expr",
    "eval_expr",
    "detect_affine",
    "to_polynomial",
    "negate_argument",
    "affine_image",
    "FUNCTIONS",
]

FUNCTIONS = ("sin", "cos", "exp", "log", "sqrt", "abs")

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_POW, _PREC_ATOM = 1, 2, 3, 4, 5
_BIN_PREC = {"+": _PREC_ADD, "-": _PREC_ADD, "*": _PREC_MUL, "/": _PREC_MUL, "^": _PREC_POW}


class FunctionExpr:
    """Base class of expression nodes."""

    __slots__ = ()
    precedence = _PREC_ATOM

    def __call__(self, x):
        return eval_expr(self, x)

    def __str__(self):
        return _format(self)


@dataclass(frozen=True, repr=False)
class Num(FunctionExpr):
    value: float

    def __repr__(self):
        return f"Num({self.value!r})"


@dataclass(frozen=True, repr=False)
class Var(FunctionExpr):
    def __repr__(self):
        return "Var()"


@dataclass(frozen=True, repr=False)
class Neg(FunctionExpr):
    operand: FunctionExpr
    precedence = _PREC_NEG

    def __repr__(self):
        return f"Neg({self.operand!r})"


@dataclass(frozen=True, repr=False)
class BinOp(FunctionExpr):
    op: str
    left: FunctionExpr
    right: FunctionExpr

    @property
    def precedence(self):
        return _BIN_PREC[self.op]

    def __repr__(self):
        return f"BinOp({self.op!r}, {self.left!r}, {self.right!r})"


@dataclass(frozen=True, repr=False)
class Call(FunctionExpr):
    name: str
    arg: FunctionExpr

    def __repr__(self):
        return f"Call({self.name!r}, {self.arg!r})"


# --------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^(),]))"
)


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            offset = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ExprSyntaxError(f"unexpected character {text[offset]!r}", offset)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "op" and value == "**":
            value = "^"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, offset = self.take()
        if val != value or kind == "end":
            found = "end of input" if kind == "end" else repr(val)
            raise ExprSyntaxError(f"expected {value!r}, found {found}", offset)

    def parse(self):
        node = self.expr()
        kind, val, offset = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {val!r}", offset)
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary())
        if kind == "op" and val == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            return BinOp("^", base, self.unary())
        return base

    def atom(self):
        kind, val, offset = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "name":
            if val == "x":
                return Var()
            if val not in FUNCTIONS:
                raise UnknownIdentifier(f"unknown identifier {val!r}", offset)
            self.expect("(")
            if self.peek()[1] == ")" and self.peek()[0] == "op":
                raise ArityMismatch(f"{val}() takes exactly one argument, got 0", offset)
            arg = self.expr()
            nargs = 1
            while self.peek()[1] == "," and self.peek()[0] == "op":
                self.take()
                self.expr()
                nargs += 1
            if nargs != 1:
                raise ArityMismatch(
                    f"{val}() takes exactly one argument, got {nargs}", offset
                )
            self.expect(")")
            return Call(val, arg)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if kind == "end" else repr(val)
        raise ExprSyntaxError(f"unexpected {found}", offset)


def parse_expr(text: str) -> FunctionExpr:
    """Parse ``text`` into an expression tree.

    Raises:
        ExprSyntaxError: malformed input; ``offset`` locates the problem.
        UnknownIdentifier: a name other than ``x`` or a known function.
        ArityMismatch: a function called with other than one argument.
    """
    if not isinstance(text, str) or not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# printing


def _fmt_number(value):
    if value.is_integer() and abs(value) < 1e16:
        s = str(int(value))
    else:
        s = repr(value)
    if value < 0 or s.startswith("-"):
        return f"({s})"
    return s


def _wrap(node, cond):
    s = _format(node)
    return f"({s})" if cond else s


def _format(node):
    if isinstance(node, Num):
        return _fmt_number(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        return "-" + _wrap(node.operand, node.operand.precedence < _PREC_NEG)
    if isinstance(node, Call):
        return f"{node.name}({_format(node.arg)})"
    if isinstance(node, BinOp):
        p = node.precedence
        if node.op == "^":
            left = _wrap(node.left, node.left.precedence <= _PREC_POW)
            right = _wrap(node.right, node.right.precedence < _PREC_NEG)
            return f"{left}^{right}"
        # right operand parenthesised at equal precedence so the tree shape survives
        left = _wrap(node.left, node.left.precedence < p)
        right = _wrap(node.right, node.right.precedence <= p)
        return f"{left} {node.op} {right}"
    raise TypeError(f"not an expression node: {node!r}")


# --------------------------------------------------------------------------
# evaluation


def _domain_fail(node, x, mask):
    idx = int(np.flatnonzero(mask)[0])
    xs = np.broadcast_to(x, mask.shape)
    raise ExprDomainError(_format(node), float(xs.flat[idx]))


def _eval(node, x):
    if isinstance(node, Num):
        return np.full_like(x, node.value)
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -_eval(node.operand, x)
    if isinstance(node, Call):
        u = _eval(node.arg, x)
        name = node.name
        if name == "log":
            bad = ~(u > 0)
            if bad.any():
                _domain_fail(node, x, bad)
            return np.log(u)
        if name == "sqrt":
            bad = ~(u >= 0)
            if bad.any():
                _domain_fail(node, x, bad)
            return np.sqrt(u)
        if name == "abs":
            return np.abs(u)
        with np.errstate(over="ignore", invalid="ignore"):
            out = getattr(np, name)(u)
        bad = ~np.isfinite(out)
        if bad.any():
            _domain_fail(node, x, bad)
        return out
    if isinstance(node, BinOp):
        lhs = _eval(node.left, x)
        rhs = _eval(node.right, x)
        op = node.op
        with np.errstate(all="ignore"):
            if op == "+":
                out = lhs + rhs
            elif op == "-":
                out = lhs - rhs
            elif op == "*":
                out = lhs * rhs
            elif op == "/":
                bad = rhs == 0
                if bad.any():
                    _domain_fail(node, x, bad)
                out = lhs / rhs
            else:
                out = np.power(lhs, rhs)
        bad = ~np.isfinite(out)
        if bad.any():
            _domain_fail(node, x, bad)
        return out
    raise TypeError(f"not an expression node: {node!r}")


def eval_expr(expr: FunctionExpr, x):
    """Evaluate ``expr`` at ``x`` (scalar or array).

    Scalars give a Python float; arrays give an array of the same shape.

    Raises:
        ExprDomainError: log of a non-positive number, sqrt of a negative
            one, division by zero, or any other non-finite intermediate.
    """
    arr = np.asarray(x, dtype=float)
    out = _eval(expr, arr)
    if arr.ndim == 0:
        return float(out)
    return out


# --------------------------------------------------------------------------
# structural helpers

AFFINE_RTOL = 1e-9


def detect_affine(expr: FunctionExpr, probe_interval) -> Optional[tuple]:
    """Return ``(p, q)`` with ``expr(x) == p*x + q`` on the interval, else None.

    The test is numeric: second differences at five equally spaced probes
    must all be below ``1e-9`` relative to the probed magnitudes.
    """
    lo, hi = map(float, probe_interval)
    if not hi > lo:
        raise ValueError(f"degenerate probe interval ({lo}, {hi})")
    t = np.linspace(lo, hi, 5)
    g = eval_expr(expr, t)
    scale = 1.0 + float(np.max(np.abs(g)))
    second = g[:-2] - 2.0 * g[1:-1] + g[2:]
    if float(np.max(np.abs(second))) > AFFINE_RTOL * scale:
        return None
    p = (g[-1] - g[0]) / (hi - lo)
    q = g[0] - p * lo
    return float(p), float(q)


def _poly_add(a, b, sign=1):
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [u + sign * v for u, v in zip(a, b)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        for j, v in enumerate(b):
            out[i + j] += u * v
    return out


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def to_polynomial(expr: FunctionExpr) -> Optional[list]:
    """Exact coefficient list (lowest degree first) if ``expr`` is a polynomial.

    Accepts numbers, ``x``, negation, ``+ - *``, division by a constant and
    non-negative integer powers.  Coefficients are ``Fraction`` values equal
    to the binary doubles written in the expression.  Anything else
    (function calls, division by a non-constant) gives None.
    """
    if isinstance(expr, Num):
        return [Fraction(expr.value)]
    if isinstance(expr, Var):
        return [Fraction(0), Fraction(1)]
    if isinstance(expr, Neg):
        p = to_polynomial(expr.operand)
        return None if p is None else [-c for c in p]
    if isinstance(expr, BinOp):
        lhs = to_polynomial(expr.left)
        rhs = to_polynomial(expr.right)
        if lhs is None or rhs is None:
            return None
        if expr.op == "+":
            return _trim(_poly_add(lhs, rhs))
        if expr.op == "-":
            return _trim(_poly_add(lhs, rhs, -1))
        if expr.op == "*":
            return _trim(_poly_mul(lhs, rhs))
        rhs = _trim(rhs)
        if expr.op == "/":
            if len(rhs) != 1 or rhs[0] == 0:
                return None
            return [c / rhs[0] for c in lhs]
        if len(rhs) != 1 or rhs[0].denominator != 1 or rhs[0] < 0 or rhs[0] > 64:
            return None
        out = [Fraction(1)]
        for _ in range(int(rhs[0])):
            out = _poly_mul(out, lhs)
        return _trim(out)
    return None


def negate_argument(expr: FunctionExpr) -> FunctionExpr:
    """Tree for ``x -> expr(-x)``.

    ``-x`` collapses back to ``x``, so applying this twice returns a tree
    equal to the original.
    """
    if isinstance(expr, Var):
        return Neg(Var())
    if isinstance(expr, Neg):
        if isinstance(expr.operand, Var):
            return Var()
        return Neg(negate_argument(expr.operand))
    if isinstance(expr, Num):
        return expr
    if isinstance(expr, Call):
        return Call(expr.name, negate_argument(expr.arg))
    if isinstance(expr, BinOp):
        return BinOp(expr.op, negate_argument(expr.left), negate_argument(expr.right))
    raise TypeError(f"not an expression node: {expr!r}")


def _num(v: Union[int, float]) -> FunctionExpr:
    v = float(v)
    return Neg(Num(-v)) if v < 0 else Num(v)


def affine_image(expr: FunctionExpr, p: float, q: float) -> FunctionExpr:
    """Tree for ``p*expr(x) + q``; trivial factors are dropped."""
    node = expr if p == 1 else BinOp("*", _num(p), expr)
    if q == 0:
        return node
    if q < 0:
        return BinOp("-", node, Num(-float(q)))
    return BinOp("+", node, Num(float(q)))


def scale_sum(terms) -> FunctionExpr:
    """Tree for ``sum(c * e for c, e in terms)``; ``terms`` must be non-empty."""
    node = None
    for c, e in terms:
        part = e if c == 1 else BinOp("*", _num(c), e)
        node = part if node is None else BinOp("+", node, part)
    return node
