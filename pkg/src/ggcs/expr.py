"""Lexer, parser and AST for the small expression language.

The same grammar serves custom structure functions (symbols ``n`` and ``q``)
and algebra expressions (Grassmann generators, oscillator operators, kets and
bras); the two uses differ only in the symbol table supplied at evaluation.

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := ('-' | '+') unary | power
    power    := atom ['^' exponent]
    exponent := '-' exponent | power
    atom     := INT | NAME ['(' expr (',' expr)* ')'] | '(' expr ')'
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = [
    "ExpressionError",
    "ParseError",
    "EvaluationError",
    "Token",
    "tokenize",
    "parse",
    "Node",
    "Num",
    "Sym",
    "Call",
    "BinOp",
    "Neg",
    "Pow",
    "Evaluator",
]


class ExpressionError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class ParseError(ExpressionError):
    pass


class EvaluationError(ExpressionError):
    pass


@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, EOF
    text: str
    line: int
    column: int


_OPS = set("+-*/^(),")


def tokenize(text: str) -> list[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], line, start_col))
            col += j - i
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("NAME", text[i:j], line, start_col))
            col += j - i
            i = j
        elif ch in _OPS:
            tokens.append(Token("OP", ch, line, start_col))
            i, col = i + 1, col + 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


@dataclass(frozen=True)
class Node:
    line: int = field(default=0, compare=False, kw_only=True)
    column: int = field(default=0, compare=False, kw_only=True)


@dataclass(frozen=True)
class Num(Node):
    value: int


@dataclass(frozen=True)
class Sym(Node):
    name: str


@dataclass(frozen=True)
class Call(Node):
    name: str
    args: tuple[Node, ...]


@dataclass(frozen=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: Node


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def _accept(self, text: str) -> Token | None:
        if self.tok.kind == "OP" and self.tok.text == text:
            return self._advance()
        return None

    def _expect(self, text: str) -> Token:
        t = self._accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.line, self.tok.column)
        return t

    def parse(self) -> Node:
        if self.tok.kind == "EOF":
            raise ParseError("empty expression", self.tok.line, self.tok.column)
        node = self.expr()
        if self.tok.kind != "EOF":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.line, self.tok.column)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-":
            t = self._advance()
            node = BinOp(t.text, node, self.term(), line=t.line, column=t.column)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.tok.kind == "OP" and self.tok.text in "*/":
            t = self._advance()
            node = BinOp(t.text, node, self.unary(), line=t.line, column=t.column)
        return node

    def unary(self) -> Node:
        t = self._accept("-")
        if t is not None:
            return Neg(self.unary(), line=t.line, column=t.column)
        if self._accept("+") is not None:
            return self.unary()
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        t = self._accept("^")
        if t is not None:
            return Pow(base, self.exponent(), line=t.line, column=t.column)
        return base

    def exponent(self) -> Node:
        t = self._accept("-")
        if t is not None:
            return Neg(self.exponent(), line=t.line, column=t.column)
        return self.power()

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "INT":
            self._advance()
            return Num(int(t.text), line=t.line, column=t.column)
        if t.kind == "NAME":
            self._advance()
            if self._accept("(") is not None:
                args = [self.expr()]
                while self._accept(",") is not None:
                    args.append(self.expr())
                self._expect(")")
                return Call(t.text, tuple(args), line=t.line, column=t.column)
            return Sym(t.text, line=t.line, column=t.column)
        if self._accept("(") is not None:
            node = self.expr()
            self._expect(")")
            return node
        found = t.text or "end of input"
        raise ParseError(f"unexpected {found!r}", t.line, t.column)


def parse(text: str) -> Node:
    return _Parser(text).parse()


class Evaluator:
    """Walks an AST; subclasses supply the symbol table and value semantics."""

    def evaluate(self, node: Node) -> Any:
        if isinstance(node, Num):
            return self.number(node.value, node)
        if isinstance(node, Sym):
            return self.symbol(node.name, node)
        if isinstance(node, Call):
            return self.call(node.name, [self.evaluate(a) for a in node.args], node)
        if isinstance(node, Neg):
            return -self.evaluate(node.operand)
        if isinstance(node, Pow):
            base = self.evaluate(node.base)
            e = self.to_int(self.evaluate(node.exponent), node.exponent)
            return self.power(base, e, node)
        if isinstance(node, BinOp):
            left, right = self.evaluate(node.left), self.evaluate(node.right)
            if node.op == "+":
                return left + right
            if node.op == "-":
                return left - right
            if node.op == "*":
                return self.multiply(left, right, node)
            return self.divide(left, right, node)
        raise EvaluationError(f"unsupported node {node!r}", node.line, node.column)

    def number(self, value: int, node: Node) -> Any:
        raise NotImplementedError

    def symbol(self, name: str, node: Node) -> Any:
        raise EvaluationError(f"unknown symbol {name!r}", node.line, node.column)

    def call(self, name: str, args: list, node: Node) -> Any:
        raise EvaluationError(f"unknown function {name!r}", node.line, node.column)

    def to_int(self, value, node: Node) -> int:
        raise NotImplementedError

    def multiply(self, left, right, node: Node):
        return left * right

    def divide(self, left, right, node: Node):
        try:
            return left / right
        except ZeroDivisionError:
            raise EvaluationError("division by zero", node.line, node.column) from None

    def power(self, base, e: int, node: Node):
        try:
            return base**e
        except ZeroDivisionError:
            raise EvaluationError("zero raised to a negative power", node.line, node.column) from None
