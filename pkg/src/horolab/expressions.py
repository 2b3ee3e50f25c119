"""Tiny expression language for rational-function input.

Grammar (binary operators left associative):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := NUMBER | IDENT | IDENT '(' expr ')' | '(' expr ')'

Precedence: '^' binds tighter than unary minus, which binds tighter than
'*'/'/', which bind tighter than '+'/'-'.  Exponents are integer literals
only.  Numbers may be integers or finite decimals; both parse exactly into
fractions.  Errors carry the offending position.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ExpressionSyntaxError, SymbolicDomainError
from .exact import Polynomial, RationalFunction

# --- AST -----------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '/'
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


Node = object

KNOWN_FUNCTIONS = ("log",)


# --- tokenizer -------------------------------------------------------------


def _tokenize(text: str):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*/^()":
            tokens.append((c, c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
            continue
        raise ExpressionSyntaxError(f"unexpected character {c!r}", position=i, text=text)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise ExpressionSyntaxError(
                f"expected {kind!r}, found {tok[1] or 'end of input'!r}",
                position=tok[2],
                text=self.text,
            )
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionSyntaxError(
                f"trailing input {tok[1]!r}", position=tok[2], text=self.text
            )
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[0] == "-":
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            caret = self.advance()
            sign = 1
            if self.peek()[0] == "-":
                self.advance()
                sign = -1
            tok = self.peek()
            if tok[0] != "num" or "." in tok[1]:
                raise ExpressionSyntaxError(
                    "exponent must be an integer literal", position=caret[2] + 1, text=self.text
                )
            self.advance()
            return Pow(base, sign * int(tok[1]))
        return base

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.advance()
            return Num(Fraction(tok[1]))
        if tok[0] == "ident":
            self.advance()
            if self.peek()[0] == "(":
                self.advance()
                arg = self.expr()
                self.expect(")")
                if tok[1] not in KNOWN_FUNCTIONS:
                    raise ExpressionSyntaxError(
                        f"unknown function {tok[1]!r}", position=tok[2], text=self.text
                    )
                return Call(tok[1], arg)
            return Var(tok[1])
        if tok[0] == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise ExpressionSyntaxError(
            f"expected a value, found {tok[1] or 'end of input'!r}",
            position=tok[2],
            text=self.text,
        )


def parse_expression(text: str) -> Node:
    return _Parser(text).parse()


# --- unparse ---------------------------------------------------------------

_LEVEL = {"+": 1, "-": 1, "*": 2, "/": 2}


def _precedence(node) -> int:
    if isinstance(node, BinOp):
        return _LEVEL[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    if isinstance(node, Num) and node.value < 0:
        return 3  # prints with a leading minus
    return 5


def _decimal_string(value: Fraction) -> str:
    """Exact literal for a fraction whose denominator is 10-smooth."""
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    scale = 0
    d = den
    for p in (2, 5):
        while d % p == 0:
            d //= p
            scale += 1
    if d != 1:
        raise SymbolicDomainError(
            "fraction has no finite decimal literal; spell it as a division",
            denominator=den,
        )
    digits = num * 10**scale // den
    s = str(abs(digits)).rjust(scale + 1, "0")
    out = s[:-scale] + "." + s[-scale:]
    return ("-" if num < 0 else "") + out


def unparse(node: Node) -> str:
    """Canonical text that reparses to a structurally equal AST."""
    return _unparse(node, 0)


def _unparse(node, min_level):
    def wrap(s, level):
        return f"({s})" if level < min_level else s

    if isinstance(node, Num):
        return wrap(_decimal_string(node.value), _precedence(node))
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({_unparse(node.arg, 0)})"
    if isinstance(node, Neg):
        return wrap(f"-{_unparse(node.operand, 3)}", 3)
    if isinstance(node, Pow):
        return wrap(f"{_unparse(node.base, 5)}^{node.exponent}", 4)
    if isinstance(node, BinOp):
        level = _LEVEL[node.op]
        left = _unparse(node.left, level)  # left associative
        right = _unparse(node.right, level + 1)
        return wrap(f"{left} {node.op} {right}", level)
    raise TypeError(f"not an expression node: {node!r}")


# --- evaluation to rational functions --------------------------------------


def to_rational_function(node: Node, var: str = "z", params=None) -> RationalFunction:
    """Evaluate the AST in Q(var); parameters bind to exact rationals.

    ``log`` and unknown identifiers are rejected: this target ring is the
    coefficient field of the differential systems, not the symbolic layer.
    """
    params = params or {}
    if isinstance(node, Num):
        return RationalFunction(Polynomial((node.value,)))
    if isinstance(node, Var):
        if node.name == var:
            return RationalFunction(Polynomial((0, 1)))
        if node.name in params:
            return RationalFunction(Polynomial((Fraction(params[node.name]),)))
        raise SymbolicDomainError(
            f"unbound identifier {node.name!r} in a rational-function context",
            identifier=node.name,
        )
    if isinstance(node, Call):
        raise SymbolicDomainError(
            f"function {node.func!r} does not stay inside Q({var})", function=node.func
        )
    if isinstance(node, Neg):
        return -to_rational_function(node.operand, var, params)
    if isinstance(node, Pow):
        base = to_rational_function(node.base, var, params)
        return base ** node.exponent
    if isinstance(node, BinOp):
        left = to_rational_function(node.left, var, params)
        right = to_rational_function(node.right, var, params)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    raise TypeError(f"not an expression node: {node!r}")


def parse_rational_function(text: str, var: str = "z", params=None) -> RationalFunction:
    return to_rational_function(parse_expression(text), var, params)
