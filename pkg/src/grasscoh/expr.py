"""Parser and elaborator for ring-element text.

Grammar (whitespace insignificant)::

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' uint)?
    atom     := rational | 'u' | cvar | schur | '(' expr ')'
    rational := int ('/' uint)?
    cvar     := 'c' digit            (c1 .. c9)
    schur    := 's[' (uint (',' uint)*)? ']'

The optional leading minus is what lets canonical prints such as
``-s[1] + 1`` parse back.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .chernpoly import ChernPolynomial
from .grassring import GrassClass, RingContext, reduce, schur_polynomial
from .partitions import as_partition, format_partition
from .productring import ProductClass, ProductContext


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = ""
        if text:
            pointer = f"\n  {text}\n  {' ' * position}^"
        super().__init__(f"{message} at position {position}{pointer}")


class ElaborationError(ValueError):
    pass


# -- AST ----------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class CVar:
    index: int


@dataclass(frozen=True)
class U:
    pass


@dataclass(frozen=True)
class Schur:
    parts: Tuple[int, ...]


@dataclass(frozen=True)
class Paren:
    inner: "Expr"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Num, CVar, U, Schur, Paren, Neg, BinOp, Pow]


# -- tokenizer / parser -------------------------------------------------

def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch == "c":
            if i + 1 < len(text) and text[i + 1] in "123456789":
                tokens.append(("cvar", text[i + 1], i))
                i += 2
            else:
                raise ParseError("expected a digit 1-9 after 'c'", i + 1, text)
        elif ch == "s":
            if i + 1 < len(text) and text[i + 1] == "[":
                tokens.append(("schur", "s[", i))
                i += 2
            else:
                raise ParseError("expected '[' after 's'", i + 1, text)
        elif ch == "u":
            tokens.append(("u", "u", i))
            i += 1
        elif ch in "+-*^/(),]":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i, text)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            shown = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, found {shown!r}", tok[2], self.text)
        self.pos += 1
        return tok

    def parse(self) -> Expr:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return node

    def expr(self) -> Expr:
        if self.peek()[0] == "-":
            self.pos += 1
            node = Neg(self.term())
        else:
            node = self.term()
        while self.peek()[0] in "+-":
            op = self.take(self.peek()[0])[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek()[0] == "*":
            self.pos += 1
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Expr:
        node = self.atom()
        if self.peek()[0] == "^":
            self.pos += 1
            node = Pow(node, int(self.take("int")[1]))
        return node

    def atom(self) -> Expr:
        kind, value, where = self.peek()
        if kind == "int":
            self.pos += 1
            num = int(value)
            if self.peek()[0] == "/":
                self.pos += 1
                den_tok = self.take("int")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("zero denominator", den_tok[2], self.text)
                return Num(Fraction(num, den))
            return Num(Fraction(num))
        if kind == "u":
            self.pos += 1
            return U()
        if kind == "cvar":
            self.pos += 1
            return CVar(int(value))
        if kind == "schur":
            self.pos += 1
            parts = []
            if self.peek()[0] != "]":
                parts.append(int(self.take("int")[1]))
                while self.peek()[0] == ",":
                    self.pos += 1
                    parts.append(int(self.take("int")[1]))
            self.take("]")
            try:
                return Schur(as_partition(parts))
            except ValueError as exc:
                raise ParseError(str(exc), where, self.text) from None
        if kind == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return Paren(inner)
        shown = value or "end of input"
        raise ParseError(f"unexpected {shown!r}", where, self.text)


def parse(text: str) -> Expr:
    return _Parser(text).parse()


def to_text(node: Expr) -> str:
    """Print an AST with the same spacing conventions as class printing."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, CVar):
        return f"c{node.index}"
    if isinstance(node, U):
        return "u"
    if isinstance(node, Schur):
        return "s" + format_partition(node.parts)
    if isinstance(node, Paren):
        return "(" + to_text(node.inner) + ")"
    if isinstance(node, Neg):
        return "-" + to_text(node.operand)
    if isinstance(node, Pow):
        return f"{to_text(node.base)}^{node.exponent}"
    if node.op == "*":
        return f"{to_text(node.left)}*{to_text(node.right)}"
    return f"{to_text(node.left)} {node.op} {to_text(node.right)}"


# -- elaboration --------------------------------------------------------

_U_SQUARED = "u^2 = 0 in this ring"


def to_polynomial(node: Expr, k: int) -> ChernPolynomial:
    """Elaborate into a Chern polynomial in c_1..c_k and u (u^2 rejected)."""
    poly = _poly(node, k)
    if any(ue >= 2 for _, ue in poly.terms):
        raise ElaborationError(_U_SQUARED)
    return poly


def _poly(node: Expr, k: int) -> ChernPolynomial:
    if isinstance(node, Num):
        return ChernPolynomial.constant(k, node.value)
    if isinstance(node, CVar):
        return ChernPolynomial.c(k, node.index)
    if isinstance(node, U):
        return ChernPolynomial.u(k)
    if isinstance(node, Schur):
        return schur_polynomial(k, node.parts)
    if isinstance(node, Paren):
        return _poly(node.inner, k)
    if isinstance(node, Neg):
        return -_poly(node.operand, k)
    if isinstance(node, Pow):
        base = _poly(node.base, k)
        if node.exponent > 1 and any(ue for _, ue in base.terms):
            raise ElaborationError(_U_SQUARED)
        return base ** node.exponent
    left, right = _poly(node.left, k), _poly(node.right, k)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    try:
        return left * right
    except ValueError:
        raise ElaborationError(_U_SQUARED) from None


def elaborate_grass(node: Expr, ctx: RingContext) -> GrassClass:
    poly = to_polynomial(node, ctx.k)
    if not poly.u_free():
        raise ElaborationError("u is not available in the bare Grassmannian ring")
    return reduce(ctx, poly)


def elaborate(node: Expr, ctx: ProductContext) -> ProductClass:
    poly = to_polynomial(node, ctx.k)
    even = ChernPolynomial(ctx.k, {(e, 0): c for (e, ue), c in poly.terms.items() if ue == 0})
    upart = ChernPolynomial(ctx.k, {(e, 0): c for (e, ue), c in poly.terms.items() if ue == 1})
    return ProductClass(ctx, reduce(ctx.inner, even), reduce(ctx.inner, upart))


def parse_class(text: str, ctx: Union[ProductContext, RingContext]):
    node = parse(text)
    if isinstance(ctx, ProductContext):
        return elaborate(node, ctx)
    return elaborate_grass(node, ctx)
