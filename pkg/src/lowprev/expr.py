"""Exactly evaluable expressions over simplex coordinates.

Grammar: infix ``+ - * /`` over rational literals and coordinates
``theta.<label>`` (or ``theta["<label>"]`` for labels that are not Python
identifiers), plus ``min(...)``, ``max(...)``, ``abs(...)`` and ``sq(...)``.
Parsing goes through :mod:`ast` with a whitelist of node types.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import ExpressionError

_FUNCS = {"min", "max", "abs", "sq"}

Poly = dict[tuple[int, ...], Fraction]


@dataclass(frozen=True)
class Expression:
    source: str
    tree: ast.Expression = field(compare=False, repr=False)

    @classmethod
    def parse(cls, source: str) -> "Expression":
        try:
            tree = ast.parse(source.strip(), mode="eval")
        except SyntaxError as exc:
            raise ExpressionError(f"cannot parse expression {source!r}: {exc.msg}") from None
        expr = cls(source.strip(), tree)
        expr._validate(tree.body)
        return expr

    def _validate(self, node: ast.AST) -> None:
        if isinstance(node, ast.BinOp):
            if not isinstance(node.op, (ast.Add, ast.Sub, ast.Mult, ast.Div)):
                raise ExpressionError(f"operator {type(node.op).__name__} not allowed in {self.source!r}")
            self._validate(node.left)
            self._validate(node.right)
        elif isinstance(node, ast.UnaryOp):
            if not isinstance(node.op, (ast.USub, ast.UAdd)):
                raise ExpressionError(f"unary operator not allowed in {self.source!r}")
            self._validate(node.operand)
        elif isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _FUNCS or node.keywords:
                raise ExpressionError(f"unknown function call in {self.source!r}")
            arity = len(node.args)
            name = node.func.id
            if (name in ("abs", "sq") and arity != 1) or (name in ("min", "max") and arity < 2):
                raise ExpressionError(f"{name} called with {arity} arguments in {self.source!r}")
            for arg in node.args:
                self._validate(arg)
        elif isinstance(node, ast.Constant):
            self._literal(node)
        else:
            self._coordinate(node)

    def _literal(self, node: ast.Constant) -> Fraction:
        if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
            raise ExpressionError(f"unsupported literal {node.value!r} in {self.source!r}")
        text = ast.get_source_segment(self.source, node) or repr(node.value)
        return Fraction(text)

    def _coordinate(self, node: ast.AST) -> str:
        if isinstance(node, ast.Attribute) and isinstance(node.value, ast.Name) and node.value.id == "theta":
            return node.attr
        if (
            isinstance(node, ast.Subscript)
            and isinstance(node.value, ast.Name)
            and node.value.id == "theta"
            and isinstance(node.slice, ast.Constant)
            and isinstance(node.slice.value, str)
        ):
            return node.slice.value
        raise ExpressionError(f"unsupported term {ast.dump(node)} in {self.source!r}")

    def coordinates(self) -> set[str]:
        out = set()
        for node in ast.walk(self.tree):
            if isinstance(node, (ast.Attribute, ast.Subscript)):
                out.add(self._coordinate(node))
        return out

    def check_labels(self, labels) -> None:
        unknown = self.coordinates() - set(labels)
        if unknown:
            raise ExpressionError(f"unknown categories {sorted(unknown)} in {self.source!r}")

    def __call__(self, theta: Mapping[str, Fraction]) -> Fraction:
        return self._eval(self.tree.body, theta)

    def _eval(self, node: ast.AST, theta: Mapping[str, Fraction]) -> Fraction:
        if isinstance(node, ast.BinOp):
            a = self._eval(node.left, theta)
            b = self._eval(node.right, theta)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if b == 0:
                raise ExpressionError(f"division by zero evaluating {self.source!r}")
            return a / b
        if isinstance(node, ast.UnaryOp):
            v = self._eval(node.operand, theta)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call):
            args = [self._eval(a, theta) for a in node.args]
            name = node.func.id
            if name == "min":
                return min(args)
            if name == "max":
                return max(args)
            if name == "abs":
                return abs(args[0])
            return args[0] * args[0]
        if isinstance(node, ast.Constant):
            return self._literal(node)
        label = self._coordinate(node)
        try:
            return Fraction(theta[label])
        except KeyError:
            raise ExpressionError(f"no coordinate {label!r} while evaluating {self.source!r}") from None

    def to_polynomial(self, labels: tuple[str, ...]) -> Poly | None:
        """Monomial expansion over ``labels``, or None when ``min``/``max``/``abs`` or a
        non-constant divisor make the expression non-polynomial."""
        self.check_labels(labels)
        return self._poly(self.tree.body, labels)

    def _poly(self, node: ast.AST, labels: tuple[str, ...]) -> Poly | None:
        k = len(labels)
        if isinstance(node, ast.Constant):
            return _pconst(self._literal(node), k)
        if isinstance(node, (ast.Attribute, ast.Subscript)):
            exps = [0] * k
            exps[labels.index(self._coordinate(node))] = 1
            return {tuple(exps): Fraction(1)}
        if isinstance(node, ast.UnaryOp):
            p = self._poly(node.operand, labels)
            if p is None or isinstance(node.op, ast.UAdd):
                return p
            return {e: -c for e, c in p.items()}
        if isinstance(node, ast.Call):
            if node.func.id != "sq":
                return None
            p = self._poly(node.args[0], labels)
            return None if p is None else _pmul(p, p)
        if isinstance(node, ast.BinOp):
            a = self._poly(node.left, labels)
            b = self._poly(node.right, labels)
            if a is None or b is None:
                return None
            if isinstance(node.op, ast.Add):
                return _padd(a, b, 1)
            if isinstance(node.op, ast.Sub):
                return _padd(a, b, -1)
            if isinstance(node.op, ast.Mult):
                return _pmul(a, b)
            if set(b) - {(0,) * k}:
                return None
            c = b.get((0,) * k, Fraction(0))
            if c == 0:
                raise ExpressionError(f"division by zero in {self.source!r}")
            return {e: v / c for e, v in a.items()}
        raise ExpressionError(f"unsupported term in {self.source!r}")

    def __str__(self) -> str:
        return self.source


def _pconst(c: Fraction, k: int) -> Poly:
    return {(0,) * k: c} if c else {}


def _padd(a: Poly, b: Poly, sign: int) -> Poly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, Fraction(0)) + sign * c
    return {e: c for e, c in out.items() if c}


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c}


def parse(source: str) -> Expression:
    return Expression.parse(source)
