"""Parser for polynomial and rational-function expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-'? factor
    factor := base ('^' UINT)?
    base   := RATIONAL | IDENT | '(' expr ')'
    RATIONAL := INT ('/' UINT)?      # written without spaces, e.g. 3/4

There is no implicit multiplication: ``2x`` is rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .errors import NotAPolynomial, ParseError, UnknownIdentifier, ZeroDenominator
from .poly import MultiPoly, VarSet
from .ratfun import RationalFunction

# AST


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str
    pos: Tuple[int, int] = (1, 1)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Paren:
    inner: "Node"


Node = Union[Num, Var, BinOp, Neg, Pow, Paren]


# tokens


@dataclass(frozen=True)
class Token:
    kind: str  # INT, RAT, IDENT, OP, EOF
    value: object
    line: int
    col: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c.isspace():
            i, col = i + 1, col + 1
            continue
        start = (line, col)
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            if j + 1 < n and text[j] == "/" and text[j + 1].isdigit():
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                den = int(text[j + 1:k])
                if den == 0:
                    raise ZeroDenominator(f"rational literal with zero denominator at line {line}, column {col}")
                tokens.append(Token("RAT", Fraction(num, den), *start))
                col += k - i
                i = k
            else:
                tokens.append(Token("INT", num, *start))
                col += j - i
                i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], *start))
            col += j - i
            i = j
            continue
        if c in "+-*/^()":
            tokens.append(Token("OP", c, *start))
            i, col = i + 1, col + 1
            continue
        raise ParseError(f"unexpected character {c!r}", line, col)
    tokens.append(Token("EOF", None, line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at_op(self, *ops) -> bool:
        tok = self.peek()
        return tok.kind == "OP" and tok.value in ops

    def fail(self, msg: str, tok: Token = None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "EOF" else repr(str(tok.value))
        raise ParseError(f"{msg}, found {found}", tok.line, tok.col)

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "EOF":
            self.fail("expected an operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at_op("+", "-"):
            op = self.advance().value
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at_op("*", "/"):
            op = self.advance().value
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.at_op("-"):
            self.advance()
            return Neg(self.factor())
        return self.factor()

    def factor(self) -> Node:
        base = self.base()
        if self.at_op("^"):
            self.advance()
            tok = self.peek()
            if tok.kind != "INT":
                self.fail("expected a nonnegative integer exponent")
            self.advance()
            return Pow(base, tok.value)
        return base

    def base(self) -> Node:
        tok = self.peek()
        if tok.kind in ("INT", "RAT"):
            self.advance()
            return Num(Fraction(tok.value))
        if tok.kind == "IDENT":
            self.advance()
            return Var(tok.value, (tok.line, tok.col))
        if self.at_op("("):
            self.advance()
            inner = self.expr()
            if not self.at_op(")"):
                self.fail("expected ')'")
            self.advance()
            return Paren(inner)
        self.fail("expected a number, variable or '('")


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def render(node: Node) -> str:
    """Text for an AST; parentheses only where the AST has Paren nodes."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Paren):
        return f"({render(node.inner)})"
    if isinstance(node, Neg):
        return f"-{render(node.operand)}"
    if isinstance(node, Pow):
        return f"{render(node.base)}^{node.exponent}"
    return f"{render(node.left)} {node.op} {render(node.right)}"


def _contains_div(node: Node) -> bool:
    if isinstance(node, BinOp):
        return node.op == "/" or _contains_div(node.left) or _contains_div(node.right)
    if isinstance(node, (Neg, Paren)):
        return _contains_div(node.operand if isinstance(node, Neg) else node.inner)
    if isinstance(node, Pow):
        return _contains_div(node.base)
    return False


def _as_varset(vars) -> VarSet:
    return vars if isinstance(vars, VarSet) else VarSet(vars)


def _eval_poly(node: Node, vars: VarSet) -> MultiPoly:
    if isinstance(node, Num):
        return MultiPoly.constant(vars, node.value)
    if isinstance(node, Var):
        if node.name not in vars:
            raise UnknownIdentifier(f"unknown identifier {node.name!r}; declared: {list(vars)}", *node.pos)
        return MultiPoly.var(vars, node.name)
    if isinstance(node, Paren):
        return _eval_poly(node.inner, vars)
    if isinstance(node, Neg):
        return -_eval_poly(node.operand, vars)
    if isinstance(node, Pow):
        return _eval_poly(node.base, vars) ** node.exponent
    a, b = _eval_poly(node.left, vars), _eval_poly(node.right, vars)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    raise NotAPolynomial("division in a polynomial expression")


def _eval_ratfun(node: Node, vars: VarSet):
    if isinstance(node, (Num, Var)):
        return _eval_poly(node, vars), MultiPoly.one(vars)
    if isinstance(node, Paren):
        return _eval_ratfun(node.inner, vars)
    if isinstance(node, Neg):
        n, d = _eval_ratfun(node.operand, vars)
        return -n, d
    if isinstance(node, Pow):
        n, d = _eval_ratfun(node.base, vars)
        return n ** node.exponent, d ** node.exponent
    (n1, d1), (n2, d2) = _eval_ratfun(node.left, vars), _eval_ratfun(node.right, vars)
    one = MultiPoly.one(vars)
    if node.op in "+-":
        s = 1 if node.op == "+" else -1
        if d1 == d2:
            return n1 + n2 * s, d1
        return n1 * d2 + (n2 * d1) * s, d1 * d2
    if node.op == "*":
        return n1 * n2, d1 * d2
    if n2.is_zero():
        raise ZeroDenominator("division by zero")
    num = n1 if d2 == one else n1 * d2
    den = n2 if d1 == one else d1 * n2
    return num, den


def parse_poly(text: str, vars) -> MultiPoly:
    vars = _as_varset(vars)
    node = parse_ast(text)
    if _contains_div(node):
        raise NotAPolynomial(f"division is not allowed in a polynomial: {text!r}")
    return _eval_poly(node, vars)


def parse_ratfun(text: str, vars) -> RationalFunction:
    vars = _as_varset(vars)
    n, d = _eval_ratfun(parse_ast(text), vars)
    if d.is_constant():
        n, d = n * (1 / d.constant_term()), MultiPoly.one(vars)
    return RationalFunction(n, d)
