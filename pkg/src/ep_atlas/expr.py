"""Small expression language for complex-valued matrix entries.

Grammar (lowest to highest binding)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' exponent)?
    exponent:= '-'? INT ('^' exponent)?
    primary := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

Exponents are integer literals only. ``a^b^c`` associates to the right and
the inner exponent is folded at parse time, so ``2^3^2`` is ``2^9``.
"""

from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Union

__all__ = [
    "ExpressionError",
    "ExpressionSyntaxError",
    "UnknownFunctionError",
    "UnboundIdentifierError",
    "EvaluationError",
    "Literal",
    "Name",
    "Neg",
    "BinOp",
    "Power",
    "Call",
    "Expression",
    "parse",
    "evaluate",
    "to_source",
    "free_names",
    "compile_expr",
    "FUNCTIONS",
    "CONSTANTS",
    "MOMENTUM_NAMES",
]

MOMENTUM_NAMES = ("k_x", "k_y", "k_z")


class ExpressionError(ValueError):
    """Base class for all DSL errors."""


class ExpressionSyntaxError(ExpressionError):
    """Malformed source text.

    Attributes
    ----------
    offset : int
        Byte offset into the UTF-8 encoded source.
    expected : frozenset of str
        Token kinds that would have been accepted at ``offset``.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str]):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected)) or "nothing"
        super().__init__(f"{message} at byte {offset} (expected one of: {exp})")


class UnknownFunctionError(ExpressionError):
    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown function {name!r} at byte {offset}")


class UnboundIdentifierError(ExpressionError):
    def __init__(self, missing):
        self.missing = tuple(sorted(missing))
        super().__init__("unbound identifier(s): " + ", ".join(self.missing))


class EvaluationError(ExpressionError, ArithmeticError):
    """Raised for division by zero, overflow or a non-finite result."""


def _re(z: complex) -> complex:
    return complex(z.real, 0.0)


def _im(z: complex) -> complex:
    return complex(z.imag, 0.0)


def _conj(z: complex) -> complex:
    return z.conjugate()


FUNCTIONS: dict[str, Callable[[complex], complex]] = {
    "sin": cmath.sin,
    "cos": cmath.cos,
    "exp": cmath.exp,
    "sqrt": cmath.sqrt,
    "conj": _conj,
    "re": _re,
    "im": _im,
}

CONSTANTS: dict[str, complex] = {"i": 1j, "pi": complex(math.pi, 0.0)}


# ---------------------------------------------------------------- AST nodes


@dataclass(frozen=True)
class Literal:
    value: complex


@dataclass(frozen=True)
class Name:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expression"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Power:
    base: "Expression"
    exponent: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expression"


Expression = Union[Literal, Name, Neg, BinOp, Power, Call]


# ---------------------------------------------------------------- tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # number, name, op, eof
    text: str
    offset: int  # byte offset


def _tokenize(source: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos = 0
    byte = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise ExpressionSyntaxError(
                f"unexpected character {source[pos]!r}",
                byte,
                frozenset({"number", "identifier", "operator", "'('", "')'"}),
            )
        text = m.group(0)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Token(kind, text, byte))
        byte += len(text.encode("utf-8"))
        pos = m.end()
    tokens.append(_Token("eof", "", byte))
    return tokens


_PRIMARY_START = frozenset({"number", "identifier", "'('", "'-'"})


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def _is_op(self, text: str) -> bool:
        return self.tok.kind == "op" and self.tok.text == text

    def _fail(self, expected) -> None:
        t = self.tok
        what = "end of input" if t.kind == "eof" else f"token {t.text!r}"
        raise ExpressionSyntaxError(f"unexpected {what}", t.offset, frozenset(expected))

    def parse(self) -> Expression:
        node = self.expr()
        if self.tok.kind != "eof":
            self._fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"})
        return node

    def expr(self) -> Expression:
        node = self.term()
        while self._is_op("+") or self._is_op("-"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expression:
        node = self.unary()
        while self._is_op("*") or self._is_op("/"):
            op = self.tok.text
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expression:
        if self._is_op("-"):
            self.i += 1
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expression:
        base = self.primary()
        if self._is_op("^"):
            self.i += 1
            return Power(base, self.exponent())
        return base

    def exponent(self) -> int:
        sign = 1
        if self._is_op("-"):
            sign = -1
            self.i += 1
        t = self.tok
        if t.kind != "number" or not t.text.isdigit():
            self._fail({"integer literal"} if sign < 0 else {"integer literal", "'-'"})
        self.i += 1
        value = int(t.text)
        if self._is_op("^"):
            self.i += 1
            at = self.tok.offset
            inner = self.exponent()
            if inner < 0:
                raise ExpressionSyntaxError(
                    "nested exponent must be non-negative", at, frozenset({"integer literal"})
                )
            value = value**inner
        return sign * value

    def primary(self) -> Expression:
        t = self.tok
        if t.kind == "number":
            self.i += 1
            return Literal(complex(float(t.text), 0.0))
        if t.kind == "name":
            self.i += 1
            if self._is_op("("):
                if t.text not in FUNCTIONS:
                    raise UnknownFunctionError(t.text, t.offset)
                self.i += 1
                arg = self.expr()
                if not self._is_op(")"):
                    self._fail({"')'"})
                self.i += 1
                return Call(t.text, arg)
            return Name(t.text)
        if self._is_op("("):
            self.i += 1
            node = self.expr()
            if not self._is_op(")"):
                self._fail({"')'", "'+'", "'-'", "'*'", "'/'", "'^'"})
            self.i += 1
            return node
        self._fail(_PRIMARY_START)
        raise AssertionError  # pragma: no cover


def parse(source: str | bytes) -> Expression:
    """Parse DSL source into an immutable AST.

    Raises
    ------
    ExpressionSyntaxError
        With byte offset and the set of acceptable tokens.
    UnknownFunctionError
        For ``name(...)`` where ``name`` is not a known function.
    """
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    return _Parser(source).parse()


# ---------------------------------------------------------------- printing


def _fmt_real(x: float) -> str:
    r = repr(float(x))
    if x < 0 or r.startswith("-"):
        return "(-" + r.lstrip("-") + ")"
    return r


def to_source(expr: Expression) -> str:
    """Print a fully parenthesised form that parses back to an equal AST."""
    if isinstance(expr, Literal):
        v = expr.value
        if v.imag == 0.0 and not math.copysign(1.0, v.imag) < 0:
            return _fmt_real(v.real)
        return f"({_fmt_real(v.real)} + {_fmt_real(v.imag)}*i)"
    if isinstance(expr, Name):
        return expr.name
    if isinstance(expr, Neg):
        return f"(-{to_source(expr.operand)})"
    if isinstance(expr, BinOp):
        return f"({to_source(expr.left)} {expr.op} {to_source(expr.right)})"
    if isinstance(expr, Power):
        return f"({to_source(expr.base)}^{expr.exponent})"
    if isinstance(expr, Call):
        return f"{expr.func}({to_source(expr.arg)})"
    raise TypeError(f"not an expression node: {expr!r}")


def free_names(expr: Expression) -> frozenset[str]:
    """Identifiers that need a binding (constants excluded)."""
    out: set[str] = set()
    stack = [expr]
    while stack:
        e = stack.pop()
        if isinstance(e, Name):
            if e.name not in CONSTANTS:
                out.add(e.name)
        elif isinstance(e, Neg):
            stack.append(e.operand)
        elif isinstance(e, BinOp):
            stack.extend((e.left, e.right))
        elif isinstance(e, Power):
            stack.append(e.base)
        elif isinstance(e, Call):
            stack.append(e.arg)
    return frozenset(out)


# ---------------------------------------------------------------- evaluation


def _finite(z: complex, what: str) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise EvaluationError(f"non-finite value {z!r} produced by {what}")
    return z


def _ipow(z: complex, n: int) -> complex:
    if n == 0:
        return complex(1.0, 0.0)
    if z == 0 and n < 0:
        raise EvaluationError("zero raised to a negative power")
    if z.imag == 0.0 and math.copysign(1.0, z.imag) > 0:
        # stay on the real line so that real inputs give exact real powers
        return complex(z.real**n, 0.0)
    return z**n


def compile_expr(expr: Expression) -> Callable[[Mapping[str, complex]], complex]:
    """Turn an AST into a closure ``f(bindings) -> complex``.

    The closure performs the same checks as :func:`evaluate` but skips the
    tree walk on repeated calls.
    """
    if isinstance(expr, Literal):
        v = complex(expr.value)
        return lambda b: v
    if isinstance(expr, Name):
        name = expr.name
        if name in CONSTANTS:
            c = CONSTANTS[name]
            return lambda b: c
        return lambda b: complex(b[name])
    if isinstance(expr, Neg):
        f = compile_expr(expr.operand)
        return lambda b: -f(b)
    if isinstance(expr, BinOp):
        lf, rf, op = compile_expr(expr.left), compile_expr(expr.right), expr.op
        if op == "+":
            return lambda b: _finite(lf(b) + rf(b), "'+'")
        if op == "-":
            return lambda b: _finite(lf(b) - rf(b), "'-'")
        if op == "*":
            return lambda b: _finite(lf(b) * rf(b), "'*'")

        def div(b):
            num, den = lf(b), rf(b)
            if den == 0:
                raise EvaluationError("division by zero")
            try:
                return _finite(num / den, "'/'")
            except (ZeroDivisionError, OverflowError) as exc:
                raise EvaluationError(str(exc)) from exc

        return div
    if isinstance(expr, Power):
        f, n = compile_expr(expr.base), expr.exponent

        def pw(b):
            try:
                return _finite(_ipow(f(b), n), "'^'")
            except (ZeroDivisionError, OverflowError) as exc:
                raise EvaluationError(str(exc)) from exc

        return pw
    if isinstance(expr, Call):
        fn, arg, name = FUNCTIONS[expr.func], compile_expr(expr.arg), expr.func

        def call(b):
            try:
                return _finite(complex(fn(arg(b))), name)
            except (ValueError, OverflowError) as exc:
                raise EvaluationError(f"{name}: {exc}") from exc

        return call
    raise TypeError(f"not an expression node: {expr!r}")


def evaluate(expr: Expression, bindings: Mapping[str, complex]) -> complex:
    """Evaluate ``expr`` under ``bindings``.

    Parameters
    ----------
    expr : Expression
    bindings : mapping of str to complex
        Must cover every name in :func:`free_names`.

    Returns
    -------
    complex

    Raises
    ------
    UnboundIdentifierError
        Lists every missing identifier.
    EvaluationError
        On division by zero, overflow, NaN or infinity.
    """
    missing = free_names(expr) - set(bindings)
    if missing:
        raise UnboundIdentifierError(missing)
    return compile_expr(expr)(bindings)
