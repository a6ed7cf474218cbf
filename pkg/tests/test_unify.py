from collections import Counter

import pytest
from hypothesis import given, settings

from cestrat.canonical import to_canonical
from cestrat.harness import CLAUSE_PAIRS
from cestrat.pce import FAIL, combine_pce, eq_pce, unify_pce
from cestrat.psi import psi
from cestrat.strategy import (
    FAIL_S,
    AtInsert,
    Choice,
    Mu,
    StrategyError,
    apply_ce,
    is_closed,
    is_well_founded_ce,
)
from cestrat.syntax import parse_strategy as S, parse_term as T
from cestrat.terms import EPS, HOLE
from cestrat.unify import CLAUSES, combine_ce, combine_general, flat_choice, unify_ce, unify_general

from gen import ce_strategies, ground_terms

DEMO = T("∂(v(x,nil),x(nil))")
RULE_I = S("(∂(v(X,Y),Z) ; @1.2.{list([],i)})")
RULE_J = S("(∂(X,x(Y)) ; @2.1.{list([],j)})")
ID = AtInsert(EPS, (HOLE,))


def test_demo_rules_combine():
    both = T("∂(v(x,list(nil,i)),x(list(nil,j)))")
    assert apply_ce(unify_general(RULE_I, RULE_J), DEMO) == both
    assert apply_ce(combine_general(RULE_I, RULE_J), DEMO) == both
    # only one rule applies once the first guard is broken
    other = T("∂(a,x(nil))")
    assert apply_ce(unify_general(RULE_I, RULE_J), other) is FAIL
    assert apply_ce(combine_general(RULE_I, RULE_J), other) == T("∂(a,x(list(nil,j)))")


def test_guard_arity_mismatch_fails():
    assert unify_ce(S("(f(X,Y) ; @1.{g([])})"), S("@3.{g([])}")) == FAIL_S


def test_disjoint_guards_fail():
    assert unify_ce(S("(f(X,a) => {g([])})"), S("(g(X) => {g([])})")) == FAIL_S


def test_root_insertions_stack():
    out = unify_ce(S("@eps.{f([],a)}"), S("@eps.{g([])}"))
    assert apply_ce(out, T("b")) == T("g(f(b,a))")


def test_loops_unify_to_a_loop():
    a, b = (S(src) for src in CLAUSE_PAIRS[0])
    out = unify_ce(a, b)
    assert isinstance(out, Mu) and is_closed(out) and is_well_founded_ce(out)
    t = T("f(f(a,a),b)")
    assert apply_ce(out, t) is FAIL
    assert apply_ce(combine_ce(a, b), t) == T("f(g(f(a,a)),b)")


def test_identity_is_neutral():
    s = to_canonical(S("[@1.{g([])}, @2.(a => {g([])}) | x(2)]"))
    for t in (T("f(a,a)"), T("f(b,a)"), T("f(a,b)")):
        assert apply_ce(unify_ce(s, ID), t) == apply_ce(s, t)
        assert apply_ce(unify_ce(ID, s), t) == apply_ce(s, t)


def test_open_operands_rejected():
    with pytest.raises(StrategyError):
        unify_ce(S("@1.X"), S("@1.{g([])}"))


def test_flat_choice():
    a, b, c = S("@1.{g([])}"), S("@2.{g([])}"), S("@eps.{g([])}")
    assert flat_choice(Choice(a, FAIL_S), Choice(b, c)) == Choice(a, Choice(b, c))
    assert flat_choice(FAIL_S, FAIL_S) == FAIL_S


def test_clause_pairs_cover_every_clause():
    seen = Counter()
    for a, b in CLAUSE_PAIRS:
        unify_general(S(a), S(b), coverage=seen)
        unify_general(S(b), S(a), coverage=seen)
    unify_ce(S("(f(X,Y) ; @1.{g([])})"), S("@3.{g([])}"), coverage=seen)
    unify_ce(S("(f(X,a) => {g([])})"), S("(g(X) => {g([])})"), coverage=seen)
    unify_ce(S("fail"), ID, coverage=seen)
    unify_ce(S("@1.{g([])}"), S("@1.(a => {g([])})"), coverage=seen)
    unify_ce(S("(f(X,Y) ; @1.{g([])})"), S("[@1.{g([])}, @2.{g([])} | x(1)]"), coverage=seen)
    assert set(CLAUSES) <= set(seen)


@settings(max_examples=150)
@given(ce_strategies(6), ce_strategies(6), ground_terms)
def test_unify_compiles_to_pce_unification(a, b, t):
    ca, cb = to_canonical(a), to_canonical(b)
    out = unify_ce(ca, cb)
    assert is_closed(out) and is_well_founded_ce(out)
    assert eq_pce(psi(out, t), unify_pce(psi(ca, t), psi(cb, t)))


@settings(max_examples=150)
@given(ce_strategies(6), ce_strategies(6), ground_terms)
def test_combine_compiles_to_pce_combination(a, b, t):
    ca, cb = to_canonical(a), to_canonical(b)
    assert eq_pce(psi(combine_ce(ca, cb), t), combine_pce(psi(ca, t), psi(cb, t)))
