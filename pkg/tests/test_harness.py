import pytest

from cestrat import harness
from cestrat.harness import (
    ABSTRACT_SIGNATURE,
    DEMO_SIGNATURE,
    DEMO_TERM,
    CombinatorialLimit,
    Law,
    Report,
    UnknownLaw,
    check_law,
    enumerate_terms,
    generate_strategies,
    signature_corpus,
)
from cestrat.strategy import is_closed, is_well_founded_ce
from cestrat.terms import depth, positions_of

FAST_LAWS = (
    "pce-neutral",
    "pce-idempotence",
    "pce-commutativity-counterexample",
    "canonical-form",
    "psi-semantics",
    "combine-homomorphism",
    "commutativity-counterexample",
    "equivalent-but-compiled-apart",
)


@pytest.fixture(scope="module")
def small():
    return signature_corpus(
        ABSTRACT_SIGNATURE, seed=3, max_depth=2, n_strategies=40, n_pairs=40, terms_per_pair=8
    )


def test_enumerate_terms():
    assert len(enumerate_terms(ABSTRACT_SIGNATURE, 0)) == 2
    # depth 1: g(a), g(b) and the four f(c, c')
    assert len(enumerate_terms(ABSTRACT_SIGNATURE, 1)) == 8
    ts = enumerate_terms(ABSTRACT_SIGNATURE, 2)
    assert len(ts) == len(set(ts)) and max(map(depth, ts)) == 2
    assert [depth(t) for t in ts] == sorted(depth(t) for t in ts)


def test_enumeration_cap():
    with pytest.raises(CombinatorialLimit):
        enumerate_terms(ABSTRACT_SIGNATURE, 4, cap=100)
    with pytest.raises(ValueError):
        enumerate_terms(ABSTRACT_SIGNATURE, -1)


def test_demo_signature():
    DEMO_SIGNATURE.check(DEMO_TERM)
    assert len(positions_of(DEMO_TERM)) == 6


def test_generated_strategies_are_valid_and_reproducible():
    a = generate_strategies(ABSTRACT_SIGNATURE, 7, seed=11, count=30)
    assert a == generate_strategies(ABSTRACT_SIGNATURE, 7, seed=11, count=30)
    assert len(a) == 30
    assert all(is_closed(s) and is_well_founded_ce(s) for s in a)


def test_corpus_is_deterministic(small):
    again = signature_corpus(
        ABSTRACT_SIGNATURE, seed=3, max_depth=2, n_strategies=40, n_pairs=40, terms_per_pair=8
    )
    assert again.triples == small.triples and again.strategies == small.strategies


@pytest.mark.parametrize("law_id", FAST_LAWS)
def test_laws_hold_on_small_corpus(small, law_id):
    r = check_law(law_id, small)
    assert r.passed, r.line()
    assert r.count > 0


def test_unknown_law(small):
    with pytest.raises(UnknownLaw):
        check_law("no-such-law", small)


def test_failing_law_reports_counterexample(small, monkeypatch):
    monkeypatch.setitem(harness.LAWS, "broken", Law("broken", "forall", "always fails", lambda c: (5, "t0")))
    r = check_law("broken", small)
    assert not r.passed
    assert r.line() == "LAW broken FAIL 5 counterexample: t0"


def test_report_format():
    assert Report("x", True, 3, "").line() == "LAW x PASS 3"
    assert Report("y", False, 0, "no witness", "exists").line() == "LAW y FAIL 0 no witness"


def test_run_prints_one_line_per_law(small):
    lines = []
    harness.run(small, ["pce-neutral", "psi-semantics"], out=lines.append)
    assert [line.split()[:3] for line in lines] == [
        ["LAW", "pce-neutral", "PASS"],
        ["LAW", "psi-semantics", "PASS"],
    ]


def test_catalog_is_complete():
    kinds = {law.id: law.kind for law in harness.LAWS.values()}
    assert len(kinds) == 19
    assert kinds["commutativity-counterexample"] == "exists"
    assert kinds["unify-homomorphism"] == "forall"
