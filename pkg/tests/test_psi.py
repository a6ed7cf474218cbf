from hypothesis import given

from cestrat.pce import FAIL, apply_pce, eq_pce
from cestrat.psi import psi, psi_apply
from cestrat.strategy import apply_ce
from cestrat.syntax import parse_pce as P, parse_strategy as S, parse_term as T

from gen import ce_strategies, ground_terms

DEMO = T("∂(v(x,nil),x(nil))")


def test_demo_rules():
    assert psi(S("(∂(X,x(Y)) ; @2.1.{list([],j)})"), DEMO) == P("[@2.1.{list([],j)}]")
    assert psi(S("(∂(v(X,Y),Z) ; @1.2.{list([],i)})"), DEMO) == P("[@1.2.{list([],i)}]")
    assert psi(S("(v(X,Y) ; @1.{g([])})"), DEMO).failed


def test_missing_position_fails():
    assert psi(S("@3.{g([])}"), T("f(a,b)")).failed
    assert psi(S("@2.(b => {g([])})"), T("a")).failed


def test_choice_and_loops():
    loop = S("mu X . (f(a,a) => {g([])}) <+ @1.X")
    assert eq_pce(psi(loop, T("f(f(a,a),b)")), P("[@1.{g([])}]"))
    assert psi(loop, T("f(b,b)")).failed


def test_gated_list():
    s = S("[@1.(a => {g([])}), @2.(a => {g([])}) | x(1) \\/ x(2)]")
    assert eq_pce(psi(s, T("f(a,b)")), P("[@1.{g([])}]"))
    assert eq_pce(psi(s, T("f(a,a)")), P("[@1.{g([])}, @2.{g([])}]"))


def test_psi_apply():
    assert psi_apply(S("@1.{g([])}"), T("f(a,b)")) == T("f(g(a),b)")
    assert psi_apply(S("fail"), T("a")) is FAIL


@given(ce_strategies(), ground_terms)
def test_compiled_form_applies_the_same(s, t):
    assert apply_pce(psi(s, t), t) == apply_ce(s, t)
