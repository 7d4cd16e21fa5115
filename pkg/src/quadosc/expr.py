"""Operator expression language: lexer, recursive-descent parser, AST, and
renderer, with exact round-tripping.

Grammar (whitespace insignificant):

    expr   := ["-"] term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ("^" UINT)?
    atom   := NAME | SCALAR | "[" expr "," expr "]" | "{" expr "," expr "}"
            | "(" expr ")"

NAME covers the operator catalogue (H, A+, ..., E11..E33, R0..R3, Rt1, the
parametric Dp(UINT)), the six zzb generators (z, zb, x3, dz, dzb, d3) and the
six transformed-space generators (u, v, w, du, dv, dw).  SCALAR atoms are the
parameter names ``lam`` and ``g``, the imaginary unit ``I``, and unsigned
integers; rational scalars are spelled with "/".  Division requires a scalar
divisor.  The signed letters A+, A-, B+, B-, C+, C-, Q+, Q- are single
tokens: the sign binds to the letter.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coeff import ParamScalar, LAM, G, I, ONE, scalar
from .weyl import (SPACE_ZZB, SPACE_UVW, variable, derivative, identity_op)
from . import operators as _ops

__all__ = ["parse", "render", "evaluate", "ExprError", "Node"]


class ExprError(ValueError):
    """Syntax or name error, carrying the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Node:
    kind: str               # "sum" | "product" | "power" | "bracket"
    #                       | "antibracket" | "name" | "scalar" | "neg" | "div"
    children: tuple = ()
    name: str = ""
    value: Fraction = Fraction(0)
    arg: int = -1           # parameter of a parametric name, -1 otherwise


def _name_node(name, arg=-1):
    return Node("name", name=name, arg=arg)


# -- Lexer ------------------------------------------------------------------

_SIGNED_LETTERS = {"A", "B", "C", "Q"}
_PUNCT = set("+-*/^[](){},")


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("uint", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word in _SIGNED_LETTERS:
                if j < n and text[j] in "+-":
                    tokens.append(("name", word + text[j], i))
                    i = j + 1
                    continue
                raise ExprError(f"letter {word!r} must carry a + or - sign", i)
            tokens.append(("word", word, i))
            i = j
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


# -- Parser -----------------------------------------------------------------

_PLAIN_NAMES = (
    {"H", "R", "S", "T", "U", "V", "W", "X", "Y", "Z", "Rt1"}
    | {f"E{i}{j}" for i in (1, 2, 3) for j in (1, 2, 3)}
    | {f"R{i}" for i in range(4)}
    | {"z", "zb", "x3", "dz", "dzb", "d3", "u", "v", "w", "du", "dv", "dw"}
)
_SCALAR_NAMES = {"lam", "g", "I"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ExprError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprError(f"trailing input {tok[1]!r}", tok[2])
        return node

    def expr(self) -> Node:
        parts = []
        if self.peek()[0] == "-":
            self.take()
            parts.append(Node("neg", (self.term(),)))
        else:
            parts.append(self.term())
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            parts.append(Node("neg", (rhs,)) if op == "-" else rhs)
        return parts[0] if len(parts) == 1 else Node("sum", tuple(parts))

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            rhs = self.factor()
            if op == "*":
                if node.kind == "product":
                    node = Node("product", node.children + (rhs,))
                else:
                    node = Node("product", (node, rhs))
            else:
                node = Node("div", (node, rhs))
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.take("uint")
            node = Node("power", (node,), value=Fraction(tok[1]))
        return node

    def atom(self) -> Node:
        tok = self.peek()
        kind, val, pos = tok
        if kind == "uint":
            self.take()
            return Node("scalar", value=Fraction(val))
        if kind == "name":
            self.take()
            return _name_node(val)
        if kind == "word":
            self.take()
            if val == "Dp":
                self.take("(")
                p = self.take("uint")[1]
                self.take(")")
                return _name_node("Dp", arg=p)
            if val in _PLAIN_NAMES or val in _SCALAR_NAMES:
                return _name_node(val)
            raise ExprError(f"unknown name {val!r}", pos)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if kind == "[":
            self.take()
            lhs = self.expr()
            self.take(",")
            rhs = self.expr()
            self.take("]")
            return Node("bracket", (lhs, rhs))
        if kind == "{":
            self.take()
            lhs = self.expr()
            self.take(",")
            rhs = self.expr()
            self.take("}")
            return Node("antibracket", (lhs, rhs))
        raise ExprError(f"unexpected token {val!r}", pos)


def parse(text: str) -> Node:
    return _Parser(text).parse()


# -- Renderer ---------------------------------------------------------------

def render(node: Node) -> str:
    return _render(node, 0)


# precedence levels: 0 sum, 1 product, 2 power/atom
def _render(node: Node, level: int) -> str:
    if node.kind == "name":
        s = f"Dp({node.arg})" if node.name == "Dp" else node.name
        return s
    if node.kind == "scalar":
        v = node.value
        s = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        need = level > 1 and v.denominator != 1
        return f"({s})" if need else s
    if node.kind == "neg":
        inner = _render(node.children[0], 1)
        s = f"-{inner}"
        return f"({s})" if level > 0 else s
    if node.kind == "sum":
        parts = []
        for i, ch in enumerate(node.children):
            if i and ch.kind == "neg":
                parts.append(" - " + _render(ch.children[0], 1))
            elif i:
                parts.append(" + " + _render(ch, 1))
            else:
                parts.append(_render(ch, 1) if ch.kind != "neg" else "-" + _render(ch.children[0], 1))
        s = "".join(parts)
        return f"({s})" if level > 0 else s
    if node.kind == "product":
        s = "*".join(_render(ch, 2) for ch in node.children)
        return f"({s})" if level > 1 else s
    if node.kind == "div":
        a = _render(node.children[0], 2)
        b = _render(node.children[1], 2)
        s = f"{a}/{b}"
        return f"({s})" if level > 1 else s
    if node.kind == "power":
        base = _render(node.children[0], 2)
        if node.children[0].kind == "power":
            base = f"({base})"
        return f"{base}^{int(node.value)}"
    if node.kind == "bracket":
        return f"[{_render(node.children[0], 0)},{_render(node.children[1], 0)}]"
    if node.kind == "antibracket":
        return f"{{{_render(node.children[0], 0)},{_render(node.children[1], 0)}}}"
    raise ValueError(f"unknown node kind {node.kind!r}")


# -- Evaluator --------------------------------------------------------------

_GENERATORS = {
    "z": (SPACE_ZZB, variable, 0), "zb": (SPACE_ZZB, variable, 1),
    "x3": (SPACE_ZZB, variable, 2),
    "dz": (SPACE_ZZB, derivative, 0), "dzb": (SPACE_ZZB, derivative, 1),
    "d3": (SPACE_ZZB, derivative, 2),
    "u": (SPACE_UVW, variable, 0), "v": (SPACE_UVW, variable, 1),
    "w": (SPACE_UVW, variable, 2),
    "du": (SPACE_UVW, derivative, 0), "dv": (SPACE_UVW, derivative, 1),
    "dw": (SPACE_UVW, derivative, 2),
}


class _Value:
    """Either a pure scalar or an operator; promotion happens on demand."""

    __slots__ = ("scalar", "op")

    def __init__(self, scalar_val=None, op=None):
        self.scalar = scalar_val
        self.op = op

    @property
    def is_scalar(self):
        return self.op is None

    def as_op(self, space=None):
        if self.op is not None:
            return self.op
        return identity_op(space or SPACE_ZZB).scale(self.scalar)


def _space_of(a: _Value, b: _Value):
    spaces = {v.op.space for v in (a, b) if v.op is not None}
    if len(spaces) > 1:
        raise ExprError("operator spaces differ in one expression", 0)
    return spaces.pop() if spaces else None


def _add(a: _Value, b: _Value) -> _Value:
    if a.is_scalar and b.is_scalar:
        return _Value(a.scalar + b.scalar)
    sp = _space_of(a, b)
    return _Value(op=a.as_op(sp) + b.as_op(sp))


def _mul(a: _Value, b: _Value) -> _Value:
    if a.is_scalar and b.is_scalar:
        return _Value(a.scalar * b.scalar)
    if a.is_scalar:
        return _Value(op=b.op.scale(a.scalar))
    if b.is_scalar:
        return _Value(op=a.op.scale(b.scalar))
    return _Value(op=a.op * b.op)


def _evaluate(node: Node) -> _Value:
    if node.kind == "scalar":
        return _Value(scalar(node.value))
    if node.kind == "name":
        nm = node.name
        if nm == "lam":
            return _Value(LAM)
        if nm == "g":
            return _Value(G)
        if nm == "I":
            return _Value(I)
        if nm == "Dp":
            from .jordan import d_p
            return _Value(op=d_p(node.arg))
        if nm in _GENERATORS:
            space, build, idx = _GENERATORS[nm]
            return _Value(op=build(idx, space))
        return _Value(op=_ops.op(nm))
    if node.kind == "neg":
        v = _evaluate(node.children[0])
        return _Value(-v.scalar) if v.is_scalar else _Value(op=-v.op)
    if node.kind == "sum":
        acc = _evaluate(node.children[0])
        for ch in node.children[1:]:
            acc = _add(acc, _evaluate(ch))
        return acc
    if node.kind == "product":
        acc = _evaluate(node.children[0])
        for ch in node.children[1:]:
            acc = _mul(acc, _evaluate(ch))
        return acc
    if node.kind == "div":
        a = _evaluate(node.children[0])
        b = _evaluate(node.children[1])
        if not b.is_scalar:
            raise ExprError("division requires a scalar divisor", 0)
        if b.scalar.is_zero():
            raise ExprError("division by zero", 0)
        if a.is_scalar:
            return _Value(a.scalar / b.scalar)
        return _Value(op=a.op.scale(ONE / b.scalar))
    if node.kind == "power":
        base = _evaluate(node.children[0])
        n = int(node.value)
        if base.is_scalar:
            return _Value(base.scalar ** n)
        return _Value(op=base.op ** n)
    if node.kind == "bracket":
        a = _evaluate(node.children[0])
        b = _evaluate(node.children[1])
        sp = _space_of(a, b)
        return _Value(op=a.as_op(sp).commutator(b.as_op(sp)))
    if node.kind == "antibracket":
        a = _evaluate(node.children[0])
        b = _evaluate(node.children[1])
        sp = _space_of(a, b)
        return _Value(op=a.as_op(sp).anticommutator(b.as_op(sp)))
    raise ValueError(f"unknown node kind {node.kind!r}")


def evaluate(text_or_node):
    """Evaluate an expression to a WeylOperator (scalars become multiples of
    the identity in the model space)."""
    node = parse(text_or_node) if isinstance(text_or_node, str) else text_or_node
    val = _evaluate(node)
    return val.as_op()


def evaluate_scalar(text_or_node) -> ParamScalar:
    """Evaluate an expression that must be a pure scalar."""
    node = parse(text_or_node) if isinstance(text_or_node, str) else text_or_node
    val = _evaluate(node)
    if not val.is_scalar:
        raise ExprError("expected a scalar expression", 0)
    return val.scalar
