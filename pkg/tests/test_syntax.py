import pytest
from hypothesis import given

from cestrat.pce import PCE_FAIL
from cestrat.strategy import And, Or, x
from cestrat.syntax import (
    ParseError,
    format_formula,
    format_pce,
    format_strategy,
    parse_formula,
    parse_pce,
    parse_position,
    parse_signature,
    parse_strategy,
    parse_term,
)
from cestrat.terms import EPS, HOLE, App, Var

from gen import ce_strategies, ground_terms, patterns, pces


def test_terms():
    assert parse_term("f(X, a)") == App("f", (Var("X"), App("a")))
    assert parse_term("∂(v(x,nil),x(nil))").args[1] == App("x", (App("nil"),))
    assert parse_term("□") == HOLE == parse_term("[]")


def test_positions():
    assert parse_position("eps") == EPS
    assert parse_position("2.1") == (2, 1)


def test_formula_precedence():
    assert parse_formula("x(1) \\/ x(2) /\\ x(1.1)") == Or(x(1), And(x(2), x(1, 1)))
    f = And(Or(x(1), x(2)), x(3))
    assert parse_formula(format_formula(f)) == f


def test_pce_text():
    assert parse_pce("fail") == PCE_FAIL
    e = parse_pce("[@2.1.{list([],j)}, @eps.{f([]),g([])}]")
    assert format_pce(e) == "[@2.1.{list([],j)}, @eps.{f([]),g([])}]"


def test_comments_and_layout():
    s = parse_strategy("# rule\nmu X .\n  (f(a,a) => {g([])})   # base\n  <+ @1.X\n")
    assert format_strategy(s) == "mu X . (f(a,a) => {g([])}) <+ @1.X"


def test_signature_file():
    sig = parse_signature("f/2\n# constants\na/0\nx/0\nx/1\n")
    assert ("x", 1) in sig.sorted() and ("x", 0) in sig.sorted()


@pytest.mark.parametrize(
    "src, line, col",
    [
        ("@1.{g([])", 1, 10),
        ("mu X .\n(f(a) ; ;)", 2, 9),
        ("[@1.{g([])} | y(1)]", 1, 15),
        ("@1.{g(a)}", 1, 5),
        ("$", 1, 1),
    ],
)
def test_error_locations(src, line, col):
    with pytest.raises(ParseError) as info:
        parse_strategy(src)
    assert (info.value.line, info.value.col) == (line, col)


def test_signature_errors():
    with pytest.raises(ParseError) as info:
        parse_signature("f/2\nbad line\n")
    assert info.value.line == 2


@given(ground_terms)
def test_term_round_trip(t):
    assert parse_term(str(t)) == t


@given(patterns)
def test_pattern_round_trip(t):
    assert parse_term(str(t)) == t


@given(pces())
def test_pce_round_trip(e):
    assert parse_pce(format_pce(e)) == e


@given(ce_strategies())
def test_strategy_round_trip(s):
    assert parse_strategy(format_strategy(s)) == s
