import pytest
from hypothesis import given, strategies as st

from cestrat.syntax import parse_term as T
from cestrat.terms import (
    EPS,
    HOLE,
    PositionError,
    Relation,
    Signature,
    TermError,
    Var,
    apply_subst,
    compare_positions,
    depth,
    is_prefix,
    match_term,
    matches,
    meet,
    mgu,
    plug,
    positions_of,
    replace_at,
    subterm_at,
)

from gen import ground_terms, patterns, positions

DEMO = T("∂(v(x,nil),x(nil))")


@pytest.mark.parametrize(
    "term, expected",
    [
        ("a", {EPS}),
        ("∂(v(x,nil),x(nil))", {EPS, (1,), (1, 1), (1, 2), (2,), (2, 1)}),
        ("f(g(a))", {EPS, (1,), (1, 1)}),
    ],
)
def test_positions_of(term, expected):
    assert positions_of(T(term)) == expected


@pytest.mark.parametrize(
    "p, q, rel",
    [
        (EPS, (2, 1), Relation.STRICT_PREFIX),
        ((1, 2), (2, 1), Relation.PARALLEL),
        ((2, 1), (2, 1), Relation.EQUAL),
        ((2, 1), (2,), Relation.STRICT_EXTENSION),
    ],
)
def test_compare_positions(p, q, rel):
    assert compare_positions(p, q) is rel


def test_subterm_and_replace():
    assert subterm_at(DEMO, (2, 1)) == T("nil")
    assert subterm_at(DEMO, EPS) == DEMO
    assert subterm_at(T("f(a,b)"), (2,)) == T("b")
    assert replace_at(T("f(a,b)"), (2,), T("c")) == T("f(a,c)")
    assert replace_at(DEMO, EPS, T("a")) == T("a")
    assert replace_at(DEMO, (2, 1), T("list(nil,j)")) == T("∂(v(x,nil),x(list(nil,j)))")


def test_out_of_range():
    with pytest.raises(PositionError):
        subterm_at(T("a"), (1,))
    with pytest.raises(PositionError):
        replace_at(T("f(a,b)"), (3,), T("a"))


@pytest.mark.parametrize("term, d", [("a", 0), ("f(a)", 1), ("∂(v(x,nil),x(nil))", 2), ("X", 0)])
def test_depth(term, d):
    assert depth(T(term)) == d


def test_plug():
    assert plug(HOLE, T("s")) == T("s")
    assert plug(T("list([],j)"), T("nil")) == T("list(nil,j)")
    assert plug(T("f([])"), T("g([])")) == T("f(g([]))")


def test_apply_subst():
    assert apply_subst({"X": T("a")}, T("f(X,Y)")) == T("f(a,Y)")
    assert apply_subst({}, DEMO) == DEMO
    assert apply_subst({"X": T("g(Y)")}, T("f(X,X)")) == T("f(g(Y),g(Y))")


def test_match_term():
    assert match_term(T("f(X)"), T("f(a)")) == {"X": T("a")}
    assert match_term(T("f(a)"), T("f(b)")) is None
    assert match_term(T("f(X,X)"), T("f(a,b)")) is None


def test_mgu_and_meet():
    assert meet(T("f(X,b)"), T("f(a,Y)")) == T("f(a,b)")
    assert mgu(Var("X"), T("f(X)")) is None
    u = T("f(X,g(Y))")
    m = meet(u, u)
    assert matches(m, u) and matches(u, m)


def test_meet_keeps_pattern_variables_apart():
    # both patterns match f(b,a); their meet must too
    u, v = T("f(X,a)"), T("f(b,X)")
    assert meet(u, v) == T("f(b,a)")
    assert mgu(u, v) is None


def test_signature():
    sig = Signature.of("x/0", "x/1", "f/2")
    sig.check(T("f(x,x(x))"))
    with pytest.raises(TermError):
        sig.check(T("g(x)"))
    with pytest.raises(TermError):
        Signature.of("f/1")


@given(ground_terms, st.data())
def test_replace_subterm_round_trip(t, data):
    p = data.draw(st.sampled_from(sorted(positions_of(t))))
    assert replace_at(t, p, subterm_at(t, p)) == t


@given(positions, positions)
def test_prefix_order_totality(p, q):
    held = [p == q, is_prefix(p, q) and p != q, is_prefix(q, p) and p != q]
    assert sum(held) + (not any(held)) == 1
    assert compare_positions(p, q) in Relation


@given(patterns, ground_terms)
def test_match_is_a_solution(u, t):
    sigma = match_term(u, t)
    if sigma is not None:
        assert apply_subst(sigma, u) == t


@given(patterns, patterns)
def test_mgu_unifies_and_is_idempotent(u, v):
    g = mgu(u, v)
    if g is not None:
        assert apply_subst(g, u) == apply_subst(g, v)
        assert {x: apply_subst(g, s) for x, s in g.items()} == g


@given(patterns, patterns, ground_terms)
def test_meet_matches_iff_both_match(u, v, t):
    m = meet(u, v)
    assert (m is not None and matches(m, t)) == (matches(u, t) and matches(v, t))
