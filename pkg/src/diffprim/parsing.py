"""Expression grammar and the field-description file format.

Expression grammar (precedence climbing):

    expr    := term (('+' | '-') term)*          left associative
    term    := unary (('*' | '/') unary)*        left associative
    unary   := '-' unary | power
    power   := atom ('^' exponent)?              binds tighter than unary '-'
    exponent:= INT ('^' exponent)?               folded to one integer
    atom    := INT | IDENT | '(' expr ')'

Integer-literal division folds to a rational literal, so 1/2*x parses as
(1/2) * x.  Implicit multiplication is rejected.  Field files are line based:
'#' starts a comment, then one of

    generator NAME
    derivation NAME = EXPR
    element NAME = EXPR

Generator line order fixes the generator order; derivatives are computed,
never written, so derivative ticks are not part of the input language.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algebra import MultiPoly, RatFunc, check_var_name
from .diffpoly import DERIV_MARK
from .errors import (
    DuplicateGenerator,
    ExprSyntaxError,
    FieldFileError,
    MissingDerivation,
    UnknownVariable,
)
from .fields import DiffField, FieldElement


# -- abstract syntax ----------------------------------------------------------


@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "ExprAst"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "ExprAst"
    right: "ExprAst"


@dataclass(frozen=True)
class Pow:
    base: "ExprAst"
    exponent: int  # literal nonnegative integer


ExprAst = Union[RationalLit, Var, Neg, BinOp, Pow]


# -- tokenizer -------------------------------------------------------------------


@dataclass(frozen=True)
class _Token:
    kind: str  # int | ident | op | end
    text: str
    line: int
    column: int


_OPS = set("+-*/^()")
_ASCII_DIGITS = set("0123456789")
_ASCII_LETTERS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
_IDENT_CHARS = _ASCII_LETTERS | _ASCII_DIGITS | {"_"}


def _tokenize(text: str, line0: int = 1, col0: int = 1) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = line0, col0
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        start_col = col
        if ch in _ASCII_DIGITS:
            j = i
            while j < len(text) and text[j] in _ASCII_DIGITS:
                j += 1
            tokens.append(_Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _ASCII_LETTERS:
            j = i
            while j < len(text) and text[j] in _IDENT_CHARS:
                j += 1
            tokens.append(_Token("ident", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _OPS:
            tokens.append(_Token("op", ch, line, start_col))
            col += 1
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(_Token("end", "", line, col))
    return tokens


# -- parser ---------------------------------------------------------------------


_PREC_ADD, _PREC_MUL, _PREC_UNARY, _PREC_POW = 1, 2, 3, 4
_BIN_PREC = {"+": _PREC_ADD, "-": _PREC_ADD, "*": _PREC_MUL, "/": _PREC_MUL}


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        shown = tok.text or "end of input"
        raise ExprSyntaxError(f"{message} (at {shown!r})", tok.line, tok.column)

    def parse(self) -> ExprAst:
        node = self.parse_expr(0)
        if self.peek().kind != "end":
            self.fail("unexpected trailing input")
        return node

    def parse_expr(self, min_prec: int) -> ExprAst:
        lhs = self.parse_atom()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "^" and _PREC_POW >= min_prec:
                self.advance()
                lhs = Pow(lhs, self.parse_exponent())
                continue
            if tok.kind != "op" or tok.text not in _BIN_PREC:
                return lhs
            prec = _BIN_PREC[tok.text]
            if prec < min_prec:
                return lhs
            self.advance()
            rhs = self.parse_expr(prec + 1)  # + - * / are left associative
            if (
                tok.text == "/"
                and isinstance(lhs, RationalLit)
                and isinstance(rhs, RationalLit)
                and rhs.value != 0
            ):
                lhs = RationalLit(lhs.value / rhs.value)
            else:
                lhs = BinOp(tok.text, lhs, rhs)

    def parse_atom(self) -> ExprAst:
        tok = self.advance()
        if tok.kind == "int":
            return RationalLit(Fraction(int(tok.text)))
        if tok.kind == "ident":
            return Var(tok.text)
        if tok.kind == "op" and tok.text == "-":
            # unary minus binds looser than ^ : -x^2 is -(x^2)
            return Neg(self.parse_expr(_PREC_UNARY))
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_expr(0)
            closing = self.advance()
            if closing.kind != "op" or closing.text != ")":
                self.fail("expected ')'", closing)
            return inner
        self.fail("expected a value", tok)

    def parse_exponent(self) -> int:
        tok = self.advance()
        if tok.kind != "int":
            self.fail("exponent must be a nonnegative integer literal", tok)
        value = int(tok.text)
        nxt = self.peek()
        if nxt.kind == "op" and nxt.text == "^":
            self.advance()
            value = value ** self.parse_exponent()  # right associative
        return value


def parse_expr(text: str, line0: int = 1, col0: int = 1) -> ExprAst:
    """Parse one expression; positions in errors are 1-based."""
    return _Parser(_tokenize(text, line0, col0)).parse()


def ast_variables(node: ExprAst) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Neg):
        return ast_variables(node.operand)
    if isinstance(node, BinOp):
        return ast_variables(node.left) | ast_variables(node.right)
    if isinstance(node, Pow):
        return ast_variables(node.base)
    return set()


def ast_to_ratfunc(node: ExprAst) -> RatFunc:
    """Exact evaluation of the tree into a rational function."""
    if isinstance(node, RationalLit):
        return RatFunc.const(node.value)
    if isinstance(node, Var):
        return RatFunc(MultiPoly.variable(node.name))
    if isinstance(node, Neg):
        return -ast_to_ratfunc(node.operand)
    if isinstance(node, Pow):
        return ast_to_ratfunc(node.base).pow_int(node.exponent)
    if isinstance(node, BinOp):
        left, right = ast_to_ratfunc(node.left), ast_to_ratfunc(node.right)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        return left / right
    raise TypeError(f"unknown node {node!r}")


# -- field files -------------------------------------------------------------------


@dataclass(frozen=True)
class FieldFile:
    """Parsed field description: ordered generators, one derivation per
    generator, and optional named elements, all as syntax trees."""

    generators: tuple[str, ...]
    derivations: dict[str, ExprAst]
    named_elements: dict[str, ExprAst]


def _check_name(name: str, line: int, role: str) -> str:
    try:
        check_var_name(name)
    except ValueError:
        raise FieldFileError(f"invalid {role} name {name!r}", line) from None
    if DERIV_MARK in name:
        raise FieldFileError(
            f"{role} name {name!r} contains the reserved marker {DERIV_MARK!r}", line
        )
    return name


def parse_field_file(text: str) -> FieldFile:
    generators: list[str] = []
    gen_lines: dict[str, int] = {}
    derivations: dict[str, ExprAst] = {}
    elements: dict[str, ExprAst] = {}
    pending: list[tuple[str, str, ExprAst, int]] = []  # (kind, name, ast, line)
    for lineno, raw in enumerate(text.splitlines(), 1):
        pre_comment = raw.split("#", 1)[0]
        line = pre_comment.strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if keyword == "generator":
            name = rest.strip()
            if not name:
                raise FieldFileError("generator line needs a name", lineno)
            _check_name(name, lineno, "generator")
            if name in generators:
                raise DuplicateGenerator(f"generator {name!r} declared twice", lineno)
            generators.append(name)
            gen_lines[name] = lineno
        elif keyword in ("derivation", "element"):
            eq_idx = pre_comment.find("=")
            if eq_idx < 0:
                raise FieldFileError(f"{keyword} line needs '= <expression>'", lineno)
            name = rest.split("=", 1)[0].strip()
            _check_name(name, lineno, keyword)
            ast = parse_expr(pre_comment[eq_idx + 1 :], line0=lineno, col0=eq_idx + 2)
            pending.append((keyword, name, ast, lineno))
        else:
            raise FieldFileError(f"unknown directive {keyword!r}", lineno)
    known = set(generators)
    for kind, name, ast, lineno in pending:
        for var in sorted(ast_variables(ast)):
            if var not in known:
                raise UnknownVariable(f"unknown variable {var!r}", lineno)
        if kind == "derivation":
            if name not in known:
                raise UnknownVariable(f"derivation for undeclared generator {name!r}", lineno)
            if name in derivations:
                raise FieldFileError(f"derivation for {name!r} given twice", lineno)
            derivations[name] = ast
        else:
            if name in known or name in elements:
                raise FieldFileError(f"name {name!r} is already taken", lineno)
            elements[name] = ast
    if not generators:
        raise FieldFileError("a field file needs at least one generator", 1)
    for g in generators:
        if g not in derivations:
            raise MissingDerivation(f"generator {g!r} has no derivation line", gen_lines[g])
    return FieldFile(tuple(generators), derivations, elements)


def build_field(ff: FieldFile) -> tuple[DiffField, dict[str, FieldElement]]:
    """Materialize a parsed field file: the field plus its named elements
    (each generator is also addressable as an element of the same name)."""
    field = DiffField(
        ff.generators,
        {g: ast_to_ratfunc(ast) for g, ast in ff.derivations.items()},
    )
    named: dict[str, FieldElement] = {g: field.gen(g) for g in ff.generators}
    for name, ast in ff.named_elements.items():
        named[name] = field.element(ast_to_ratfunc(ast))
    return field, named
