"""Brute-force law checking over small corpora of terms and strategies.

Every law is a quantified statement evaluated exhaustively over a
:class:`Corpus`.  ``forall`` laws pass when no counterexample exists;
``exists`` laws pass when a witness is found.  Reports are deterministic for
a given seed and bounds.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional

from .canonical import is_canonical, to_canonical
from .pce import (
    IDENTITY,
    PCE,
    apply_pce,
    combine_pce,
    eq_pce,
    normalize_pce,
    sort_entries,
    unify_pce,
)
from .psi import psi
from .strategy import (
    FAIL_S,
    FALSE,
    TRUE,
    And,
    At,
    AtInsert,
    Choice,
    FixVar,
    GatedList,
    Guard,
    GuardInsert,
    Mu,
    Or,
    PosVar,
    apply_ce,
    conj,
    is_closed,
    is_well_founded_ce,
    list_violation,
    one_left,
    size,
    top_down,
    walk,
)
from .syntax import format_pce, format_strategy, parse_strategy
from .terms import (
    EPS,
    HOLE,
    App,
    Signature,
    TermError,
    Var,
    apply_subst,
    compose,
    depth,
    has_position,
    matches,
    meet,
)
from .unify import CLAUSES, combine_ce, unify_ce

ABSTRACT_SIGNATURE = Signature.of("f/2", "g/1", "a/0", "b/0")
DEMO_SIGNATURE = Signature.of("∂/2", "v/2", "x/0", "x/1", "list/2", "nil/0", "i/0", "j/0")
DEMO_TERM = App("∂", (App("v", (App("x"), App("nil"))), App("x", (App("nil"),))))


class CombinatorialLimit(ValueError):
    pass


class UnknownLaw(KeyError):
    pass


# -- terms ------------------------------------------------------------------------


def enumerate_terms(sig: Signature, max_depth: int, cap: int = 100_000) -> list:
    """All ground terms of depth at most ``max_depth``, shallow ones first."""
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    layers = [[App(n) for n in sig.constants()]]  # layers[d]: terms of depth exactly d
    total = len(layers[0])
    for d in range(1, max_depth + 1):
        below = [t for layer in layers for t in layer]
        layer = []
        for name, arity in sig.sorted():
            if arity == 0:
                continue
            for args in itertools.product(below, repeat=arity):
                if max(depth(a) for a in args) == d - 1:
                    layer.append(App(name, args))
                    total += 1
                    if total > cap:
                        raise CombinatorialLimit(f"more than {cap} terms of depth <= {max_depth}")
        layers.append(layer)
    return [t for layer in layers for t in layer]


def random_term(rng: random.Random, sig: Signature, max_depth: int, variables=()):
    symbols = sig.sorted()
    leaves = [App(n) for n in sig.constants()] + [Var(v) for v in variables]
    if max_depth == 0 or rng.random() < 0.25:
        return rng.choice(leaves)
    name, arity = rng.choice([s for s in symbols if s[1] > 0])
    return App(name, tuple(random_term(rng, sig, max_depth - 1, variables) for _ in range(arity)))


def sample_terms(rng: random.Random, sig: Signature, depth_: int, count: int) -> list:
    """``count`` distinct ground terms of depth exactly ``depth_`` (or fewer if rare)."""
    out, seen = [], set()
    for _ in range(count * 50):
        t = random_term(rng, sig, depth_)
        if depth(t) == depth_ and t not in seen:
            seen.add(t)
            out.append(t)
            if len(out) == count:
                break
    return out


# -- strategies ----------------------------------------------------------------------


def contexts_of(sig: Signature) -> list:
    """Depth-one contexts ``f(c, .., [], .., c)`` with the first constant elsewhere."""
    c0 = App(sig.constants()[0])
    out = []
    for name, arity in sig.sorted():
        for i in range(arity):
            args = [c0] * arity
            args[i] = HOLE
            out.append(App(name, tuple(args)))
    return out


@dataclass
class Generator:
    sig: Signature
    rng: random.Random
    max_size: int = 12
    counter: int = 0
    contexts: list = field(default_factory=list)

    def __post_init__(self):
        self.contexts = self.contexts or contexts_of(self.sig)
        self.arity = self.sig.max_arity()

    def ctxs(self):
        k = 1 if self.rng.random() < 0.75 else 2
        return tuple(self.rng.choice(self.contexts) for _ in range(k))

    def pattern(self):
        return random_term(self.rng, self.sig, self.rng.choice((0, 1, 1, 2)), ("X", "Y"))

    def position(self, allow_eps=False):
        r = self.rng.random()
        if allow_eps and r < 0.35:
            return EPS
        p = (self.rng.randint(1, self.arity),)
        if r > 0.85:
            p += (self.rng.randint(1, self.arity),)
        return p

    def formula(self, ps):
        ps = [p for p in ps if p != EPS]
        r = self.rng.random()
        if not ps or r < 0.1:
            return TRUE
        if r < 0.13:
            return FALSE
        vs = [PosVar(p) for p in ps]
        self.rng.shuffle(vs)
        f = vs[0]
        for v in vs[1:]:
            if self.rng.random() < 0.5:
                f = And(f, v) if self.rng.random() < 0.5 else Or(f, v)
        return f

    def strategy(self, budget: int, guarded=(), unguarded=()):
        rng = self.rng
        fixable = list(guarded)
        leaf = budget <= 1
        kinds = ["insert", "ginsert"] + (["var"] * 2 if fixable else []) + ["fail"] * (rng.random() < 0.1)
        if not leaf:
            kinds += ["guard", "choice", "choice", "at", "at", "list", "list"]
            if len(guarded) + len(unguarded) < 2:
                kinds += ["mu", "mu"]
        k = rng.choice(kinds)
        if k == "fail":
            return FAIL_S
        if k == "var":
            return FixVar(rng.choice(fixable))
        if k == "insert":
            return AtInsert(self.position(allow_eps=True), self.ctxs())
        if k == "ginsert":
            return GuardInsert(self.pattern(), self.ctxs())
        if k == "guard":
            return Guard(self.pattern(), self.strategy(budget - 1, guarded, unguarded))
        if k == "choice":
            left = rng.randint(1, budget - 1)
            return Choice(
                self.strategy(left, guarded, unguarded),
                self.strategy(budget - left, guarded, unguarded),
            )
        if k == "at":
            return At(self.position(), self.strategy(budget - 1, tuple(guarded) + tuple(unguarded)))
        if k == "mu":
            self.counter += 1
            var = "X" if not (guarded or unguarded) else f"X{self.counter}"
            body = self.strategy(budget - 1, guarded, tuple(unguarded) + (var,))
            return Mu(var, body)
        return self.gated_list(budget - 1, tuple(guarded) + tuple(unguarded))

    def gated_list(self, budget, guarded):
        rng = self.rng
        for _ in range(20):
            n = rng.choice((1, 2, 2, 3))
            entries, used = [], set()
            for _ in range(n):
                p = self.position(allow_eps=True)
                if p in used:
                    continue
                used.add(p)
                if p == EPS or rng.random() < 0.4:
                    entries.append(AtInsert(p, self.ctxs()))
                else:
                    entries.append(At(p, self.strategy(max(1, budget // n), guarded)))
            if not entries:
                continue
            g = GatedList(sort_entries(entries), self.formula([e.position for e in entries]))
            if list_violation(g) is None:
                return g
        return AtInsert(EPS, self.ctxs())


def templates(sig: Signature) -> list:
    """Hand-written shapes: the neutral element, traversals and loops over each symbol."""
    ctxs = contexts_of(sig)
    c1, c2 = ctxs[0], ctxs[-1]
    out = [AtInsert(EPS, (HOLE,)), FAIL_S]
    for name, arity in sig.sorted():
        if arity == 0:
            continue
        u = App(name, tuple(Var(f"X{i}") for i in range(1, arity + 1)))
        ground = App(name, tuple(App(sig.constants()[0]) for _ in range(arity)))
        out.append(GuardInsert(u, (c1,)))
        out.append(Mu("X", Choice(GuardInsert(ground, (c2,)), At((1,), FixVar("X")))))
        out.append(GatedList(tuple(AtInsert((i,), (c1,)) for i in range(1, arity + 1)), conj((i,) for i in range(1, arity + 1))))
    base = GuardInsert(App(sig.constants()[0]), (c1,))
    out.append(top_down(base, sig))
    out.append(one_left(base, sig))
    return out


DEMO_STRATEGIES = (
    "@2.1.{list([],j)}",
    "@1.2.{list([],i)}",
    "(∂(v(X,Y),Z) ; @1.2.{list([],i)})",
    "(∂(X,x(Y)) ; @2.1.{list([],j)})",
)

ABSTRACT_STRATEGIES = (
    "(f(X,Y) => {g([])})",
    "(f(X,Y) ; @1.{g([])})",
    "(g(X) ; @eps.{g([])})",
    "(g(X) ; @1.{g([])})",
    "mu X . (f(a,a) => {g([])}) <+ @1.X",
    "mu X . (f(b,X1) => {f([],b)}) <+ @1.X",
    "mu X . (f(Y,Z) => {g([])}) <+ [@1.X, @2.X | x(1) \\/ x(2)]",
    "[@1.{g([])}, @2.(a => {g([])}) | x(2)]",
    "[@1.(a => {g([])}), @2.(b => {g([])}) | x(1) \\/ x(2)]",
    "[@1.1.{g([])}, @1.2.{f([],a)}, @eps.{g([])} | x(1.1) /\\ x(1.2)]",
    "(g(X) ; @2.{g([])})",
    "(f(X,a) ; @1.{g([])})",
    "(f(X,b) ; @2.{g([])})",
    "@1.{f(a,[])} <+ @eps.{g([])}",
)


def generate_strategies(sig: Signature, size_bound: int, seed: int, count: int, extra=()) -> list:
    """``count`` closed, well-founded strategies: templates first, then random ones."""
    rng = random.Random(seed)
    gen = Generator(sig, rng, size_bound)
    out, seen = [], set()

    def add(s):
        if s not in seen and is_closed(s) and is_well_founded_ce(s) and size(s) <= 4 * size_bound:
            seen.add(s)
            out.append(s)

    for s in list(extra) + templates(sig):
        add(s)
    tries = 0
    while len(out) < count and tries < count * 100:
        tries += 1
        try:
            add(gen.strategy(rng.randint(1, size_bound)))
        except TermError:
            continue
    return out[:count]


# -- corpus -------------------------------------------------------------------------


@dataclass
class Corpus:
    terms: list
    strategies: list
    seed: int = 0
    pairs: list = field(default_factory=list)
    triples: list = field(default_factory=list)
    pces: list = field(default_factory=list)
    require_coverage: bool = False
    _canon: dict = field(default_factory=dict, repr=False)
    _psi: dict = field(default_factory=dict, repr=False)

    def canonical(self, i: int):
        if i not in self._canon:
            self._canon[i] = to_canonical(self.strategies[i])
        return self._canon[i]

    def psi(self, s, t):
        key = (s, t)
        if key not in self._psi:
            self._psi[key] = psi(s, t)
        return self._psi[key]


def default_terms(seed: int = 0, max_depth: int = 3) -> list:
    """Ground terms over the abstract and demo signatures."""
    rng = random.Random(seed)
    terms = enumerate_terms(ABSTRACT_SIGNATURE, min(max_depth, 2))
    if max_depth >= 3:
        terms += sample_terms(rng, ABSTRACT_SIGNATURE, 3, 16)
    demo = [DEMO_TERM] + enumerate_terms(DEMO_SIGNATURE, min(max_depth, 1))
    if max_depth >= 2:
        demo += sample_terms(rng, DEMO_SIGNATURE, 2, 12)
    if max_depth >= 3:
        demo += sample_terms(rng, DEMO_SIGNATURE, 3, 8)
    seen = set(terms)
    return terms + [t for t in dict.fromkeys(demo) if t not in seen]


def default_corpus(
    seed: int = 0,
    max_depth: int = 3,
    n_strategies: int = 320,
    n_pairs: int = 600,
    terms_per_pair: int = 24,
    size_bound: int = 9,
) -> Corpus:
    rng = random.Random(seed)
    terms = default_terms(seed, max_depth)

    n_demo = n_strategies // 4
    strategies = generate_strategies(
        ABSTRACT_SIGNATURE, size_bound, seed, n_strategies - n_demo, [parse_strategy(s) for s in ABSTRACT_STRATEGIES]
    )
    demo_strategies = generate_strategies(
        DEMO_SIGNATURE, size_bound, seed + 1, n_demo, [parse_strategy(s) for s in DEMO_STRATEGIES]
    )
    n_abs = len(strategies)
    strategies += [s for s in demo_strategies if s not in set(strategies)]

    corpus = Corpus(terms=terms, strategies=strategies, seed=seed, require_coverage=True)
    abstract_terms = [t for t in terms if _over(t, ABSTRACT_SIGNATURE)]
    demo_terms = [t for t in terms if not _over(t, ABSTRACT_SIGNATURE)]
    index = {s: i for i, s in enumerate(strategies)}
    abs_idx = list(range(n_abs))
    demo_idx = list(range(n_abs, len(strategies)))

    loops = [i for i in abs_idx if any(isinstance(n, Mu) for n in walk(strategies[i]))]
    pairs = [(index[parse_strategy(a)], index[parse_strategy(b)]) for a, b in CLAUSE_PAIRS]
    while len(pairs) < n_pairs:
        r = rng.random()
        pool = demo_idx if r < 0.2 else loops if r < 0.4 else abs_idx
        pairs.append((rng.choice(pool), rng.choice(pool)))
    corpus.pairs = pairs
    demo_set = set(demo_idx)
    for i, j in pairs:
        pool = demo_terms if i in demo_set else abstract_terms
        for t in rng.sample(pool, min(terms_per_pair, len(pool))):
            corpus.triples.append((i, j, t))
    _collect_pces(corpus)
    return corpus


def signature_terms(sig: Signature, seed: int = 0, max_depth: int = 3, max_terms: int = 150) -> list:
    """Up to 40 ground terms of each depth, all of them when there are few."""
    rng = random.Random(seed)
    terms = []
    for d in range(max_depth + 1):
        try:
            layer = [t for t in enumerate_terms(sig, d, cap=5000) if depth(t) == d]
        except CombinatorialLimit:
            layer = sample_terms(rng, sig, d, 40)
        if len(layer) > 40:
            layer = rng.sample(layer, 40)
        terms += layer
    return terms[:max_terms]


def signature_corpus(
    sig: Signature,
    seed: int = 0,
    max_depth: int = 3,
    n_strategies: int = 320,
    n_pairs: int = 600,
    terms_per_pair: int = 24,
    size_bound: int = 9,
    max_terms: int = 150,
) -> Corpus:
    """A corpus over a user-supplied signature."""
    rng = random.Random(seed)
    terms = signature_terms(sig, seed, max_depth, max_terms)
    strategies = generate_strategies(sig, size_bound, seed, n_strategies)
    corpus = Corpus(terms=terms, strategies=strategies, seed=seed)
    n = len(strategies)
    corpus.pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(n_pairs)]
    for i, j in corpus.pairs:
        for t in rng.sample(terms, min(terms_per_pair, len(terms))):
            corpus.triples.append((i, j, t))
    _collect_pces(corpus)
    return corpus


def _collect_pces(corpus: Corpus, limit: int = 60):
    pces = []
    for s in corpus.strategies[:80]:
        for t in corpus.terms[::9]:
            e = corpus.psi(s, t)
            if not e.failed and e.entries and e not in pces:
                pces.append(e)
    corpus.pces = pces[:limit]


# pairs that reach the rarer unification clauses
CLAUSE_PAIRS = (
    ("mu X . (f(a,a) => {g([])}) <+ @1.X", "mu X . (f(b,X1) => {f([],b)}) <+ @1.X"),
    ("(f(X,a) ; @1.{g([])})", "(f(X,b) ; @2.{g([])})"),
    ("(g(X) ; @1.{g([])})", "(g(X) ; @2.{g([])})"),
    ("(f(X,Y) => {g([])})", "(f(X,Y) ; @1.{g([])})"),
    ("(g(X) ; @eps.{g([])})", "mu X . (f(a,a) => {g([])}) <+ @1.X"),
    ("[@1.{g([])}, @2.(a => {g([])}) | x(2)]", "[@1.(a => {g([])}), @2.(b => {g([])}) | x(1) \\/ x(2)]"),
    ("@1.{f(a,[])} <+ @eps.{g([])}", "[@1.{g([])}, @2.(a => {g([])}) | x(2)]"),
    ("@2.1.{list([],j)}", "@1.2.{list([],i)}"),
    ("(f(X,Y) ; @1.{g([])})", "(g(X) ; @1.{g([])})"),
)


def _over(t, sig: Signature) -> bool:
    try:
        sig.check(t)
        return True
    except TermError:
        return False


# -- laws ---------------------------------------------------------------------------


@dataclass
class Report:
    law: str
    passed: bool
    count: int
    detail: str = ""
    kind: str = "forall"

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"LAW {self.law} {status} {self.count}"
        return f"{out} {self.detail}" if self.detail else out


@dataclass
class Law:
    id: str
    kind: str
    about: str
    check: Callable


LAWS: dict = {}


def law(id_: str, about: str, kind: str = "forall"):
    def deco(fn):
        LAWS[id_] = Law(id_, kind, about, fn)
        return fn

    return deco


def check_law(law_id: str, corpus: Corpus) -> Report:
    try:
        entry = LAWS[law_id]
    except KeyError:
        raise UnknownLaw(law_id) from None
    count, found = entry.check(corpus)
    if entry.kind == "forall":
        return Report(law_id, found is None, count, "" if found is None else f"counterexample: {found}")
    return Report(law_id, found is not None, count, f"witness: {found}" if found else "no witness", "exists")


def check_all(corpus: Corpus, ids=None) -> list:
    return [check_law(i, corpus) for i in (ids or LAWS)]


def _s(s) -> str:
    return format_strategy(s)


def _equiv_on(corpus: Corpus, s1, s2, terms) -> Optional[str]:
    for t in terms:
        e1, e2 = corpus.psi(s1, t), corpus.psi(s2, t)
        if not eq_pce(e1, e2):
            return f"t={t} left={format_pce(e1)} right={format_pce(e2)}"
    return None


# term-core


def _patterns(sig: Signature, max_depth: int, variables) -> list:
    leaves = [App(n) for n in sig.constants()] + [Var(v) for v in variables]
    layers = [leaves]
    for _ in range(max_depth):
        below = [t for layer in layers for t in layer]
        nxt = []
        for name, arity in sig.sorted():
            if arity:
                for args in itertools.product(below, repeat=arity):
                    if any(a in layers[-1] for a in args):
                        nxt.append(App(name, args))
        layers.append(nxt)
    return [t for layer in layers for t in layer]


@law("meet-matches", "the meet of two patterns matches exactly the terms both match")
def _law_meet(corpus: Corpus):
    ground = enumerate_terms(ABSTRACT_SIGNATURE, 2)
    pats = _patterns(ABSTRACT_SIGNATURE, 2, ("X", "Y"))
    masks: dict = {}

    def mask(u):
        if u not in masks:
            masks[u] = sum(1 << k for k, t in enumerate(ground) if matches(u, t))
        return masks[u]

    count = 0
    for u in pats:
        mu_ = mask(u)
        for v in pats:
            m = meet(u, v)
            got = 0 if m is None else mask(m)
            count += len(ground)
            if got != mu_ & mask(v):
                bad = (got ^ (mu_ & mask(v))).bit_length() - 1
                return count, f"u={u} v={v} meet={m} t={ground[bad]}"
    return count, None


@law("subsumption", "an instance matching implies the more general instance matches")
def _law_subsumption(corpus: Corpus):
    ground = enumerate_terms(ABSTRACT_SIGNATURE, 2)
    pats = _patterns(ABSTRACT_SIGNATURE, 1, ("X", "Y"))
    small = _patterns(ABSTRACT_SIGNATURE, 1, ("Y",))
    gammas = [{}] + [{"X": s} for s in small] + [{"X": Var("Y")}]
    thetas = [{}] + [{"Y": s} for s in small[:8]] + [{"X": s} for s in small[:8]]
    count = 0
    for u in pats:
        for g in gammas:
            gu = apply_subst(g, u)
            for th in thetas:
                su = apply_subst(compose(th, g), u)
                for t in ground:
                    count += 1
                    if matches(su, t) and not matches(gu, t):
                        return count, f"u={u} gamma={g} theta={th} t={t}"
    return count, None


# insertion lists


@law("pce-neutral", "the identity list is neutral for unification and combination")
def _law_pce_neutral(corpus):
    count = 0
    for e in corpus.pces:
        for op in (unify_pce, combine_pce):
            for lhs in (op(e, IDENTITY), op(IDENTITY, e)):
                count += 1
                if not eq_pce(lhs, e):
                    return count, f"E={format_pce(e)}"
    return count, None


@law("pce-idempotence", "unifying or combining a list with itself changes nothing")
def _law_pce_idem(corpus):
    count = 0
    for e in corpus.pces:
        for op in (unify_pce, combine_pce):
            count += 1
            if not eq_pce(op(e, e), e):
                return count, f"E={format_pce(e)}"
    return count, None


@law("pce-associativity", "list unification and combination associate")
def _law_pce_assoc(corpus):
    count = 0
    es = corpus.pces[:25] + [PCE(None)]
    for a, b, c in itertools.product(es, repeat=3):
        for op in (unify_pce, combine_pce):
            count += 1
            if not eq_pce(op(op(a, b), c), op(a, op(b, c))):
                return count, f"{format_pce(a)} {format_pce(b)} {format_pce(c)}"
    return count, None


@law("pce-commutativity-counterexample", "list unification is not commutative", "exists")
def _law_pce_comm(corpus):
    count = 0
    for a, b in itertools.product(corpus.pces, repeat=2):
        count += 1
        if not eq_pce(unify_pce(a, b), unify_pce(b, a)):
            return count, f"E={format_pce(a)} E'={format_pce(b)}"
    return count, None


# canonical form and the compiler


@law("canonical-form", "canonicalization preserves semantics, is canonical and idempotent")
def _law_canonical(corpus):
    count = 0
    for i, s in enumerate(corpus.strategies):
        c = corpus.canonical(i)
        count += 1
        if not is_canonical(c) or not is_well_founded_ce(c):
            return count, f"S={_s(s)} canonical={_s(c)} is not canonical/well-founded"
        if to_canonical(c) != c:
            return count, f"S={_s(s)} is not a fixed point: {_s(c)}"
        for t in corpus.terms:
            count += 1
            if apply_ce(c, t) != apply_ce(s, t) or not eq_pce(corpus.psi(c, t), corpus.psi(s, t)):
                return count, f"S={_s(s)} canonical={_s(c)} t={t}"
    return count, None


@law("psi-semantics", "applying the compiled list equals applying the strategy")
def _law_psi(corpus):
    count = 0
    for s in corpus.strategies:
        for t in corpus.terms:
            count += 1
            e = corpus.psi(s, t)
            if apply_pce(e, t) != apply_ce(s, t):
                return count, f"S={_s(s)} t={t} psi={format_pce(e)}"
            if e.entries is not None and e.entries and normalize_pce(e) != normalize_pce(PCE(sort_entries(e.entries))):
                return count, f"S={_s(s)} t={t} unsorted output"
    return count, None


def _pce_strategy(e: PCE):
    entries = tuple(AtInsert(x.position, x.contexts) for x in sort_entries(e.entries))
    return GatedList(entries, conj(x.position for x in entries if x.position != EPS))


@law("pce-strategy-equivalence", "lists are equal iff they compile equally everywhere they apply")
def _law_pce_psi(corpus):
    count = 0
    for a, b in itertools.product(corpus.pces[:30], repeat=2):
        count += 1
        sa, sb = _pce_strategy(a), _pce_strategy(b)
        need = set(a.positions()) | set(b.positions())
        full = [t for t in corpus.terms if all(has_position(t, p) for p in need)]
        same = all(eq_pce(corpus.psi(sa, t), corpus.psi(sb, t)) for t in corpus.terms)
        if eq_pce(a, b) and not all(eq_pce(corpus.psi(sa, t), corpus.psi(sb, t)) for t in full):
            return count, f"E={format_pce(a)} E'={format_pce(b)} (equal lists compile apart)"
        if same and full and not eq_pce(a, b):
            return count, f"E={format_pce(a)} E'={format_pce(b)} (different lists compile alike)"
    return count, None


@law("psi-equal-implies-equivalent", "equal compiled lists give equal results")
def _law_psi_sound(corpus):
    count = 0
    ss = corpus.strategies[:120]
    for s1, s2 in zip(ss, ss[1:] + ss[:1]):
        for t in corpus.terms:
            count += 1
            if eq_pce(corpus.psi(s1, t), corpus.psi(s2, t)) and apply_ce(s1, t) != apply_ce(s2, t):
                return count, f"S={_s(s1)} S'={_s(s2)} t={t}"
    for i, s in enumerate(corpus.strategies[:120]):
        c = corpus.canonical(i)
        for t in corpus.terms:
            count += 1
            if eq_pce(corpus.psi(s, t), corpus.psi(c, t)) and apply_ce(s, t) != apply_ce(c, t):
                return count, f"S={_s(s)} S'={_s(c)} t={t}"
    return count, None


EQUIVALENT_APART = (
    ("(g(X) => {g([])})", "(g(X) ; @1.{g([])})"),
)


@law("equivalent-but-compiled-apart", "equivalent strategies may compile to different lists", "exists")
def _law_psi_converse(corpus):
    count = 0
    cands = [(parse_strategy(a), parse_strategy(b)) for a, b in EQUIVALENT_APART]
    cands += list(zip(corpus.strategies, corpus.strategies[1:]))
    for s1, s2 in cands:
        count += 1
        if all(apply_ce(s1, t) == apply_ce(s2, t) for t in corpus.terms):
            for t in corpus.terms:
                if not eq_pce(corpus.psi(s1, t), corpus.psi(s2, t)):
                    return count, f"S={_s(s1)} S'={_s(s2)} t={t}"
    return count, None


# unification and combination


def _homomorphism(corpus, op_ce, op_pce, coverage=None):
    count = 0
    built: dict = {}
    for i, j, t in corpus.triples:
        key = (i, j)
        if key not in built:
            built[key] = op_ce(corpus.canonical(i), corpus.canonical(j), coverage=coverage)
        s = built[key]
        count += 1
        lhs = corpus.psi(s, t)
        rhs = op_pce(corpus.psi(corpus.canonical(i), t), corpus.psi(corpus.canonical(j), t))
        if not eq_pce(lhs, rhs):
            return count, (
                f"S={_s(corpus.canonical(i))} S'={_s(corpus.canonical(j))} t={t} "
                f"result={_s(s)} psi={format_pce(lhs)} expected={format_pce(rhs)}"
            )
    return count, None


def clause_coverage(corpus: Corpus) -> Counter:
    cov: Counter = Counter()
    for i, j in dict.fromkeys(corpus.pairs):
        unify_ce(corpus.canonical(i), corpus.canonical(j), coverage=cov)
    return cov


@law("unify-homomorphism", "compiling a unification equals unifying the compiled lists")
def _law_t1(corpus):
    cov: Counter = Counter()
    count, found = _homomorphism(corpus, unify_ce, unify_pce, cov)
    missing = [c for c in CLAUSES if not cov[c]]
    if found is None and missing and corpus.require_coverage:
        found = f"clauses never exercised: {', '.join(missing)}"
    return count, found


@law("combine-homomorphism", "compiling a combination equals combining the compiled lists")
def _law_t2(corpus):
    return _homomorphism(corpus, combine_ce, combine_pce)


def _strategy_pairs(corpus, n=60):
    return [(corpus.canonical(i), corpus.canonical(j)) for i, j in list(dict.fromkeys(corpus.pairs))[:n]]


def _some_terms(corpus, n=30):
    return corpus.terms[:: max(1, len(corpus.terms) // n)]


@law("neutral-element", "the root identity insertion is neutral for both operators")
def _law_neutral(corpus):
    # for combination the law is stated for operands that do not fail
    neutral = AtInsert(EPS, (HOLE,))
    terms = _some_terms(corpus)
    count = 0
    for i in range(len(corpus.strategies)):
        s = corpus.canonical(i)
        live = [t for t in terms if not corpus.psi(s, t).failed]
        for lhs, on in (
            (unify_ce(s, neutral), terms),
            (unify_ce(neutral, s), terms),
            (combine_ce(s, neutral), live),
            (combine_ce(neutral, s), live),
        ):
            count += 1
            bad = _equiv_on(corpus, lhs, s, on)
            if bad:
                return count, f"S={_s(s)} {bad}"
    return count, None


@law("idempotence", "an operand unified or combined with itself is unchanged")
def _law_idem(corpus):
    terms = _some_terms(corpus)
    count = 0
    for i in range(len(corpus.strategies)):
        s = corpus.canonical(i)
        for op in (unify_ce, combine_ce):
            count += 1
            bad = _equiv_on(corpus, op(s, s), s, terms)
            if bad:
                return count, f"S={_s(s)} {bad}"
    return count, None


@law("associativity", "both operators associate up to equivalence")
def _law_assoc(corpus):
    rng = random.Random(corpus.seed)
    terms = _some_terms(corpus, 20)
    n = len(corpus.strategies)
    count = 0
    for _ in range(120):
        a, b, c = (corpus.canonical(rng.randrange(n)) for _ in range(3))
        for op in (unify_ce, combine_ce):
            count += 1
            bad = _equiv_on(corpus, op(op(a, b), c), op(a, op(b, c)), terms)
            if bad:
                return count, f"S1={_s(a)} S2={_s(b)} S3={_s(c)} {bad}"
    return count, None


@law("commutativity-counterexample", "strategy unification is not commutative", "exists")
def _law_comm(corpus):
    count = 0
    for a, b in _strategy_pairs(corpus, 200):
        count += 1
        bad = _equiv_on(corpus, unify_ce(a, b), unify_ce(b, a), corpus.terms)
        if bad:
            return count, f"S={_s(a)} S'={_s(b)} {bad}"
    return count, None


@law("failure", "unification fails iff an operand fails; combination iff both do")
def _law_failure(corpus):
    count = 0
    built: dict = {}
    for i, j, t in corpus.triples:
        if (i, j) not in built:
            a, b = corpus.canonical(i), corpus.canonical(j)
            built[(i, j)] = (unify_ce(a, b), combine_ce(a, b))
        u, c = built[(i, j)]
        fa = corpus.psi(corpus.canonical(i), t).failed
        fb = corpus.psi(corpus.canonical(j), t).failed
        count += 1
        if corpus.psi(u, t).failed != (fa or fb) or corpus.psi(c, t).failed != (fa and fb):
            return count, f"S={_s(corpus.canonical(i))} S'={_s(corpus.canonical(j))} t={t}"
    return count, None


def equivalent_variants(s) -> list:
    """Strategies equivalent to ``s`` by construction."""
    return [Choice(s, FAIL_S), Choice(FAIL_S, s), Choice(s, s), to_canonical(s)]


@law("congruence", "equivalent operands give equivalent results")
def _law_congruence(corpus):
    rng = random.Random(corpus.seed + 7)
    terms = _some_terms(corpus, 20)
    n = len(corpus.strategies)
    count = 0
    for k in range(40):
        s1 = corpus.strategies[rng.randrange(n)]
        s = corpus.canonical(rng.randrange(n))
        for s2 in equivalent_variants(s1):
            c1, c2 = to_canonical(s1), to_canonical(s2)
            bad = _equiv_on(corpus, c1, c2, terms)
            if bad:
                return count, f"variants apart: S1={_s(s1)} S2={_s(s2)} {bad}"
            for op in (unify_ce, combine_ce):
                for lhs, rhs in ((op(c1, s), op(c2, s)), (op(s, c1), op(s, c2))):
                    count += 1
                    bad = _equiv_on(corpus, lhs, rhs, terms)
                    if bad:
                        return count, f"S1={_s(s1)} S2={_s(s2)} S={_s(s)} {bad}"
    return count, None


def run(corpus: Corpus, ids=None, out=print) -> list:
    reports = check_all(corpus, ids)
    for r in reports:
        out(r.line())
    return reports
