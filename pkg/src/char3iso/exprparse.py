"""Parser for field constants, polynomials, and rational functions.

Grammar (whitespace between tokens is ignored):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-'? atom ('^' UINT)?
    atom   := UINT | 't' | 'x' | '(' expr ')'

Implicit multiplication ("2x") is rejected. Integer literals may be
arbitrarily large and are reduced mod 3. 't' is the generator of the field
extension and needs degree >= 2; 'x' is only meaningful when parsing a
polynomial or rational function. Error offsets are 0-based byte positions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GeneratorUnavailable, ParseError, ZeroDenominator
from .ratrec import Polynomial, RationalFunction


# ---- tokens and AST -----------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # INT OP LPAREN RPAREN GEN VAR END
    text: str
    pos: int


@dataclass(frozen=True)
class Lit:
    value: int
    pos: int


@dataclass(frozen=True)
class Gen:
    pos: int


@dataclass(frozen=True)
class Var:
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*', '/'
    left: object
    right: object
    pos: int


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], i))
            i = j
            continue
        if ch == "t":
            tokens.append(_Token("GEN", ch, i))
        elif ch == "x":
            tokens.append(_Token("VAR", ch, i))
        elif ch in "+-*/^":
            tokens.append(_Token("OP", ch, i))
        elif ch == "(":
            tokens.append(_Token("LPAREN", ch, i))
        elif ch == ")":
            tokens.append(_Token("RPAREN", ch, i))
        else:
            raise ParseError(i, f"unexpected character {ch!r}")
        i += 1
    tokens.append(_Token("END", "", n))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ParseError(tok.pos, f"unexpected {tok.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "OP" and self.peek().text in "+-":
            op = self.advance()
            node = BinOp(op.text, node, self.term(), op.pos)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind == "OP" and self.peek().text in "*/":
            op = self.advance()
            node = BinOp(op.text, node, self.factor(), op.pos)
        return node

    def factor(self):
        sign = None
        if self.peek().kind == "OP" and self.peek().text == "-":
            sign = self.advance()
        node = self.atom()
        if self.peek().kind == "OP" and self.peek().text == "^":
            caret = self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "INT":
                raise ParseError(exp_tok.pos, "exponent must be an unsigned integer")
            self.advance()
            node = Pow(node, int(exp_tok.text), caret.pos)
        if sign is not None:
            node = Neg(node, sign.pos)
        return node

    def atom(self):
        tok = self.advance()
        if tok.kind == "INT":
            return Lit(int(tok.text), tok.pos)
        if tok.kind == "GEN":
            return Gen(tok.pos)
        if tok.kind == "VAR":
            return Var(tok.pos)
        if tok.kind == "LPAREN":
            node = self.expr()
            closing = self.advance()
            if closing.kind != "RPAREN":
                raise ParseError(closing.pos, "expected ')'")
            return node
        raise ParseError(tok.pos, f"expected a value, found {tok.text or 'end of input'!r}")


def parse_expression(text):
    """The raw syntax tree; mostly useful for tests of precedence."""
    return _Parser(text).parse()


# ---- evaluation ---------------------------------------------------------

def _field_gen(field, pos):
    if field.degree < 2:
        raise GeneratorUnavailable(pos, "'t' needs a field extension of degree >= 2")
    return field.gen


def _eval_constant(node, field):
    if isinstance(node, Lit):
        return field.from_int(node.value)
    if isinstance(node, Gen):
        return _field_gen(field, node.pos)
    if isinstance(node, Var):
        raise ParseError(node.pos, "'x' is not allowed in a field constant")
    if isinstance(node, Neg):
        return -_eval_constant(node.operand, field)
    if isinstance(node, Pow):
        return _eval_constant(node.base, field) ** node.exponent
    if isinstance(node, BinOp):
        if node.op == "/":
            raise ParseError(node.pos, "division is not allowed in a field constant")
        left = _eval_constant(node.left, field)
        right = _eval_constant(node.right, field)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError(f"unknown node {node!r}")


def _eval_rational(node, field):
    if isinstance(node, Lit):
        return RationalFunction.constant(field, node.value)
    if isinstance(node, Gen):
        return RationalFunction.constant(field, _field_gen(field, node.pos))
    if isinstance(node, Var):
        return RationalFunction.x(field)
    if isinstance(node, Neg):
        return -_eval_rational(node.operand, field)
    if isinstance(node, Pow):
        return _eval_rational(node.base, field) ** node.exponent
    if isinstance(node, BinOp):
        left = _eval_rational(node.left, field)
        right = _eval_rational(node.right, field)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if right.is_zero:
            raise ZeroDenominator(f"zero denominator at offset {node.pos}")
        return left / right
    raise TypeError(f"unknown node {node!r}")


def parse_field_element(text, field):
    """Evaluate a constant expression (integers, 't', + - * ^, parens)."""
    return _eval_constant(_Parser(text).parse(), field)


def parse_rational_function(text, field):
    """Evaluate a polynomial or quotient expression in x, in lowest terms."""
    return _eval_rational(_Parser(text).parse(), field)


def parse_polynomial(text, field):
    """Like parse_rational_function but requires denominator one."""
    rf = parse_rational_function(text, field)
    if rf.den != Polynomial.one(field):
        raise ParseError(0, "expected a polynomial, found a quotient")
    return rf.num
