import pytest
from hypothesis import given

from cestrat.canonical import (
    MAX_EXPANSION,
    ExpansionLimit,
    expand_disjunction,
    expand_gates,
    is_canonical,
    split_positions,
    to_canonical,
    to_dnf,
)
from cestrat.strategy import TRUE, At, AtInsert, apply_ce, conj, x
from cestrat.syntax import parse_formula as PF, parse_strategy as S, parse_term as T
from cestrat.terms import EPS, HOLE

from gen import ce_strategies, ground_terms

G = (T("g([])"),)


@pytest.mark.parametrize(
    "src, clauses",
    [
        ("true", [TRUE]),
        ("false", []),
        ("x(1) \\/ x(2)", [x(1), x(2)]),
        ("(x(1) \\/ x(2)) /\\ x(3)", [conj([x(1), x(3)]), conj([x(2), x(3)])]),
        ("x(1) \\/ x(1)", [x(1)]),
    ],
)
def test_dnf(src, clauses):
    assert to_dnf(PF(src)) == clauses


def test_expand_disjunction_orders_subsets_largest_first():
    entries = S("[@1.(a => {g([])}), @2.(b => {g([])}) | true]").entries
    out = expand_disjunction(entries, PF("x(1) \\/ x(2)"))
    assert out == S(
        "[@1.(a => {g([])}), @2.(b => {g([])}) | x(1) /\\ x(2)]"
        " <+ @1.(a => {g([])}) <+ @2.(b => {g([])})"
    )


def test_expand_with_root_insert_and_empty_subset():
    entries = S("[@1.(a => {g([])}), @eps.{g([])} | true]").entries
    out = expand_disjunction(entries, TRUE)
    assert out == S("[@1.(a => {g([])}), @eps.{g([])} | x(1)] <+ @eps.{g([])}")


def test_lone_root_strategy_entry():
    assert expand_gates(S("[@eps.(a => {g([])}) | true]")) == S("(a => {g([])}) <+ @eps.{[]}")
    assert expand_gates(S("[@eps.(a => {g([])}) | false]")) == S("fail")


def test_expansion_limit():
    entries = ", ".join(f"@{i}.{{g([])}}" for i in range(1, MAX_EXPANSION + 2))
    with pytest.raises(ExpansionLimit):
        expand_gates(S(f"[{entries} | true]"))


def test_split_jump():
    assert split_positions(S("@2.1.(a => {g([])})")) == S("@2.@1.(a => {g([])})")
    assert split_positions(AtInsert((2, 1), G)) == At((2,), AtInsert((1,), G))


def test_split_list_groups_by_first_step():
    s = S("[@1.1.(a => {g([])}), @1.2.(b => {g([])}) | x(1.1) /\\ x(1.2)]")
    assert split_positions(s) == S("@1.[@1.(a => {g([])}), @2.(b => {g([])}) | x(1) /\\ x(2)]")


def test_is_canonical():
    assert is_canonical(S("@1.@2.{g([])}"))
    assert not is_canonical(S("@1.2.{g([])}"))
    assert not is_canonical(S("[@1.{g([])}, @2.{g([])} | x(1) \\/ x(2)]"))
    assert AtInsert(EPS, (HOLE,)) == S("@eps.{[]}")


@given(ce_strategies())
def test_result_is_canonical(s):
    assert is_canonical(to_canonical(s))


@given(ce_strategies(), ground_terms)
def test_canonical_form_preserves_behaviour(s, t):
    assert apply_ce(to_canonical(s), t) == apply_ce(s, t)


@given(ce_strategies())
def test_canonicalization_is_stable(s):
    c = to_canonical(s)
    assert to_canonical(c) == c
