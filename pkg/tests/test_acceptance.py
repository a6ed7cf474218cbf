"""Acceptance criteria 1-8, one PASS/FAIL line each."""

import time

import pytest

from cestrat.harness import (
    DEMO_TERM,
    check_law,
    clause_coverage,
    default_corpus,
)
from cestrat.pce import apply_pce, combine_pce, eq_pce
from cestrat.psi import psi
from cestrat.strategy import Guard, GuardInsert, apply_ce, walk
from cestrat.syntax import (
    format_pce,
    format_strategy,
    parse_pce,
    parse_strategy,
    parse_term,
)
from cestrat.unify import CLAUSES, combine_general


@pytest.fixture(scope="module")
def corpus():
    return default_corpus()


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return emit


def laws(corpus, *ids):
    start = time.perf_counter()
    reports = [check_law(i, corpus) for i in ids]
    return reports, time.perf_counter() - start


def summary(reports):
    return "; ".join(r.line() for r in reports)


def test_1_reference_terms(report):
    start = time.perf_counter()
    j, i = parse_pce("[@2.1.{list([],j)}]"), parse_pce("[@1.2.{list([],i)}]")
    ok = (
        apply_pce(j, DEMO_TERM) == parse_term("∂(v(x,nil),x(list(nil,j)))")
        and apply_pce(i, DEMO_TERM) == parse_term("∂(v(x,list(nil,i)),x(nil))")
    )
    both = parse_term("∂(v(x,list(nil,i)),x(list(nil,j)))")
    ok = ok and apply_pce(combine_pce(j, i), DEMO_TERM) == both
    rule_i = parse_strategy("(∂(v(X,Y),Z) ; @1.2.{list([],i)})")
    rule_j = parse_strategy("(∂(X,x(Y)) ; @2.1.{list([],j)})")
    ok = ok and apply_ce(combine_general(rule_j, rule_i), DEMO_TERM) == both
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 1.0
    assert report(1, ok, f"reference terms reproduced in {elapsed:.3f}s")


def test_2_compiled_semantics(corpus, report):
    (r,), elapsed = laws(corpus, "psi-semantics")
    size_ok = len(corpus.strategies) >= 300 and len(corpus.terms) >= 30
    ok = r.passed and size_ok and elapsed < 60
    detail = f"{len(corpus.strategies)} strategies x {len(corpus.terms)} terms in {elapsed:.1f}s; {r.line()}"
    assert report(2, ok, detail)


def test_3_unification_homomorphism(corpus, report):
    (r,), elapsed = laws(corpus, "unify-homomorphism")
    cov = clause_coverage(corpus)
    missing = [c for c in CLAUSES if not cov[c]]
    ok = r.passed and r.count >= 10_000 and not missing and elapsed < 300
    detail = f"{r.count} triples, {len(CLAUSES) - len(missing)}/{len(CLAUSES)} clauses in {elapsed:.1f}s; {r.line()}"
    assert report(3, ok, detail)


def test_4_combination_homomorphism(corpus, report):
    (r,), elapsed = laws(corpus, "combine-homomorphism")
    ok = r.passed and r.count >= 10_000
    assert report(4, ok, f"{r.count} triples in {elapsed:.1f}s; {r.line()}")


def test_5_algebraic_laws(corpus, report):
    reports, elapsed = laws(
        corpus,
        "neutral-element",
        "idempotence",
        "associativity",
        "failure",
        "congruence",
        "commutativity-counterexample",
    )
    congruence = next(r for r in reports if r.law == "congruence")
    ok = all(r.passed for r in reports) and congruence.count >= 100
    assert report(5, ok, f"{elapsed:.1f}s; {summary(reports)}")


def test_6_canonicalization(corpus, report):
    reports, elapsed = laws(corpus, "canonical-form")
    assert report(6, reports[0].passed, f"{elapsed:.1f}s; {summary(reports)}")


def test_7_matching_and_unification(corpus, report):
    reports, elapsed = laws(corpus, "meet-matches", "subsumption")
    assert report(7, all(r.passed for r in reports), f"{elapsed:.1f}s; {summary(reports)}")


def test_8_round_trip(corpus, report):
    terms = list(corpus.terms)
    terms += [u for i in range(len(corpus.strategies)) for u in _patterns_in(corpus.strategies[i])]
    bad = [t for t in terms if parse_term(str(t)) != t]
    pces = list(corpus.pces) + [psi(corpus.canonical(i), t) for i in range(0, len(corpus.strategies), 7) for t in corpus.terms[::9]]
    bad += [e for e in pces if parse_pce(format_pce(e)) != e]
    strategies = list(corpus.strategies) + [corpus.canonical(i) for i in range(len(corpus.strategies))]
    bad += [s for s in strategies if parse_strategy(format_strategy(s)) != s]
    total = len(terms) + len(pces) + len(strategies)
    assert report(8, not bad, f"{total - len(bad)}/{total} objects survive print and parse")


def _patterns_in(s):
    return [n.pattern for n in walk(s) if isinstance(n, (Guard, GuardInsert))]


def test_combined_result_matches_law_reports(corpus):
    # the reference pair also appears in the corpus and agrees there
    j = parse_strategy("@2.1.{list([],j)}")
    i = parse_strategy("@1.2.{list([],i)}")
    assert eq_pce(psi(combine_general(j, i), DEMO_TERM), combine_pce(psi(j, DEMO_TERM), psi(i, DEMO_TERM)))
