"""Expression grammar and field-file format."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffprim import MultiPoly, RatFunc, ast_to_ratfunc, build_field, parse_expr, parse_field_file
from diffprim.errors import (
    DivisionByZero,
    DuplicateGenerator,
    ExprSyntaxError,
    FieldFileError,
    MissingDerivation,
    UnknownVariable,
)
from diffprim.parsing import BinOp, Neg, Pow, RationalLit, Var


def test_basic_shapes():
    assert parse_expr("x^2 + y") == BinOp("+", Pow(Var("x"), 2), Var("y"))
    assert parse_expr("1/2*x") == BinOp("*", RationalLit(Fraction(1, 2)), Var("x"))
    assert parse_expr("x") == Var("x")
    assert parse_expr("  7 ") == RationalLit(Fraction(7))


def test_precedence_and_associativity():
    # pow > unary minus > mul/div > add/sub
    assert parse_expr("-x^2") == Neg(Pow(Var("x"), 2))
    assert parse_expr("-x*y") == BinOp("*", Neg(Var("x")), Var("y"))
    assert parse_expr("1-2-3") == BinOp("-", BinOp("-", RationalLit(Fraction(1)),
                                                  RationalLit(Fraction(2))),
                                        RationalLit(Fraction(3)))
    assert parse_expr("2*x+y") == BinOp("+", BinOp("*", RationalLit(Fraction(2)), Var("x")),
                                        Var("y"))
    # literal exponent chains fold right-associatively
    assert parse_expr("x^2^3") == Pow(Var("x"), 8)


def test_rational_literals_fold():
    assert parse_expr("3/4/5") == RationalLit(Fraction(3, 20))
    assert ast_to_ratfunc(parse_expr("1/2*x")) == RatFunc(
        MultiPoly.variable("x"), MultiPoly.const(2)
    )


def test_syntax_errors_carry_positions():
    with pytest.raises(ExprSyntaxError) as err:
        parse_expr("x +")
    assert err.value.line == 1 and err.value.column == 4
    with pytest.raises(ExprSyntaxError):
        parse_expr("x^y")  # exponent must be an integer literal
    with pytest.raises(ExprSyntaxError):
        parse_expr("2x")  # implicit multiplication rejected
    with pytest.raises(ExprSyntaxError):
        parse_expr("(x")
    with pytest.raises(ExprSyntaxError):
        parse_expr("x $ y")


def test_division_by_zero_literal():
    ast = parse_expr("1/0")
    with pytest.raises(DivisionByZero):
        ast_to_ratfunc(ast)


def test_field_file_round_trip(example_field_text):
    ff = parse_field_file(example_field_text)
    assert ff.generators == ("x", "y")
    field, named = build_field(ff)
    assert named["a"] == field.element(
        RatFunc(MultiPoly.variable("x") ** 2 + MultiPoly.variable("y"))
    )
    assert field.derivation["x"] == RatFunc.const(1)
    assert field.derivation["y"] == RatFunc.const(0)


def test_field_file_errors():
    with pytest.raises(MissingDerivation) as err:
        parse_field_file("generator x\n")
    assert err.value.line == 1
    with pytest.raises(DuplicateGenerator):
        parse_field_file("generator x\ngenerator x\nderivation x = 1\n")
    with pytest.raises(UnknownVariable) as err:
        parse_field_file("generator x\nderivation x = 1\nelement a = z\n")
    assert err.value.line == 3
    with pytest.raises(UnknownVariable):
        parse_field_file("generator x\nderivation x = 1\nderivation q = 0\n")
    with pytest.raises(FieldFileError):
        parse_field_file("generator x\nderivation x = 1\nwhatever y\n")
    with pytest.raises(FieldFileError):
        parse_field_file("")
    with pytest.raises(FieldFileError):
        # element may not shadow a generator
        parse_field_file("generator x\nderivation x = 1\nelement x = 1\n")
    with pytest.raises(ExprSyntaxError) as err:
        parse_field_file("generator x\nderivation x = 1 +\n")
    assert err.value.line == 2


def test_field_file_comments_and_crlf():
    text = "# heading\r\ngenerator x # trailing\r\nderivation x = 1\r\n"
    ff = parse_field_file(text)
    assert ff.generators == ("x",)


def test_reserved_marker_rejected():
    with pytest.raises(FieldFileError):
        parse_field_file("generator a__D1\nderivation a__D1 = 1\n")


def _round_trips(rf: RatFunc) -> bool:
    return ast_to_ratfunc(parse_expr(rf.render())) == rf


def test_rendered_forms_reparse(example_field_text):
    cases = [
        RatFunc(MultiPoly.variable("x") ** 2 + MultiPoly.variable("y")),
        RatFunc(-MultiPoly.variable("x") + 1),
        RatFunc(MultiPoly.const(Fraction(-5, 3))),
        RatFunc(2 * MultiPoly.variable("x") * MultiPoly.variable("y"),
                MultiPoly.variable("x") - 1),
        RatFunc(MultiPoly.zero()),
    ]
    for rf in cases:
        assert _round_trips(rf)


@st.composite
def small_ratfunc(draw):
    names = ["x", "y"]
    def poly(nonzero=False):
        terms = {}
        for _ in range(draw(st.integers(1, 3))):
            mono = []
            for v in names:
                e = draw(st.integers(0, 2))
                if e:
                    mono.append((v, e))
            c = draw(st.integers(-4, 4))
            if c:
                terms[tuple(sorted(mono))] = Fraction(c)
        p = MultiPoly(terms)
        if nonzero and p.is_zero:
            return MultiPoly.const(1)
        return p
    return RatFunc(poly(), poly(nonzero=True))


@settings(max_examples=80, deadline=None)
@given(small_ratfunc())
def test_round_trip_property(rf):
    assert _round_trips(rf)


@settings(max_examples=150, deadline=None)
@given(st.text(max_size=40))
def test_parser_never_panics(text):
    try:
        parse_expr(text)
    except ExprSyntaxError:
        pass


@settings(max_examples=80, deadline=None)
@given(st.binary(max_size=60))
def test_field_file_parser_never_panics(blob):
    text = blob.decode("utf-8", errors="replace")
    try:
        parse_field_file(text)
    except (ExprSyntaxError, FieldFileError):
        pass
