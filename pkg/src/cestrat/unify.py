"""Unification and combination of canonical strategies.

``unify_ce(S, S2)`` builds a strategy that performs the insertions of both
operands and fails when either fails; ``combine_ce`` falls back to each
operand alone.  Fixed points are unified by unfolding, with a table of
pending operand pairs that closes cycles with fresh variables ``Z0, Z1, ...``.
"""

from __future__ import annotations

from collections import Counter

from .canonical import make_list, to_canonical
from .strategy import (
    FAIL_S,
    At,
    AtInsert,
    Choice,
    Const,
    Fail,
    FixVar,
    GatedList,
    Guard,
    GuardInsert,
    Mu,
    NameSupply,
    StrategyError,
    bound_names,
    conjunction_vars,
    free_vars,
    unfold,
)
from .pce import reduce_tuple
from .terms import EPS, HOLE, App, meet

CLAUSES = (
    "fail",
    "choice-left",
    "choice-right",
    "mu-mu",
    "mu-other",
    "pending",
    "guard-guard",
    "guardinsert",
    "meet-fail",
    "guard-jump",
    "guard-jump-arity-fail",
    "guard-list",
    "insert-insert-same",
    "insert-strategy-same",
    "strategy-strategy-same",
    "jump-jump-distinct",
    "list-list",
)


def flat_choice(left, right):
    """``left <+ right`` re-associated to the right, with failing branches dropped."""
    alts = []

    def collect(s):
        if isinstance(s, Choice):
            collect(s.left)
            collect(s.right)
        elif not isinstance(s, Fail):
            alts.append(s)

    collect(left)
    collect(right)
    if not alts:
        return FAIL_S
    out = alts[-1]
    for s in reversed(alts[:-1]):
        out = Choice(s, out)
    return out


def _guard(pattern, body):
    if isinstance(body, Fail):
        return FAIL_S
    if isinstance(body, AtInsert) and body.position == EPS:
        return GuardInsert(pattern, body.contexts)
    return Guard(pattern, body)


def _entries(s):
    """``(position, item, required)`` triples of a jump or gated list.

    ``item`` is a context tuple for insertions and a strategy otherwise.
    """
    if isinstance(s, AtInsert):
        return [(s.position, s.contexts, True)]
    if isinstance(s, At):
        return [(s.position, s.body, True)]
    if s.formula == Const(False):
        return None
    req = conjunction_vars(s.formula)
    if req is None:
        raise StrategyError("unification needs canonical operands (conjunctive gates)")
    return [
        (e.position, e.contexts if isinstance(e, AtInsert) else e.body, e.position == EPS or e.position in req)
        for e in s.entries
    ]


def _as_strategy(item):
    return AtInsert(EPS, item) if isinstance(item, tuple) else item


class Unifier:
    def __init__(self, names: NameSupply = None, coverage: Counter = None):
        self.names = names
        self.coverage = coverage if coverage is not None else Counter()
        self.pending: dict = {}

    def hit(self, tag):
        self.coverage[tag] += 1

    def __call__(self, a, b):
        if self.names is None:
            self.names = NameSupply(bound_names(a) | bound_names(b))
        return self.unify(a, b)

    def unify(self, a, b):
        if isinstance(a, Fail) or isinstance(b, Fail):
            self.hit("fail")
            return FAIL_S
        if isinstance(a, Choice):
            self.hit("choice-left")
            return flat_choice(self.unify(a.left, b), self.unify(a.right, b))
        if isinstance(b, Choice):
            self.hit("choice-right")
            return flat_choice(self.unify(a, b.left), self.unify(a, b.right))
        if isinstance(a, Mu) or isinstance(b, Mu):
            key = (a, b)
            if key in self.pending:
                self.hit("pending")
                return FixVar(self.pending[key])
            self.hit("mu-mu" if isinstance(a, Mu) and isinstance(b, Mu) else "mu-other")
            z = self.names.fresh()
            self.pending[key] = z
            try:
                body = self.unify(unfold(a) if isinstance(a, Mu) else a, unfold(b) if isinstance(b, Mu) else b)
            finally:
                del self.pending[key]
            return Mu(z, body) if z in free_vars(body) else body
        if isinstance(a, FixVar) or isinstance(b, FixVar):
            raise StrategyError("unification needs closed operands")
        if isinstance(a, GuardInsert):
            if isinstance(b, (Guard, GuardInsert)):
                self.hit("guardinsert")
            return self.unify(Guard(a.pattern, AtInsert(EPS, a.contexts)), b)
        if isinstance(b, GuardInsert):
            if isinstance(a, Guard):
                self.hit("guardinsert")
            return self.unify(a, Guard(b.pattern, AtInsert(EPS, b.contexts)))
        if isinstance(a, Guard) and isinstance(b, Guard):
            m = meet(a.pattern, b.pattern)
            if m is None:
                self.hit("meet-fail")
                return FAIL_S
            self.hit("guard-guard")
            return _guard(m, self.unify(a.body, b.body))
        if isinstance(a, At) and a.position == EPS:
            return self.unify(a.body, b)
        if isinstance(b, At) and b.position == EPS:
            return self.unify(a, b.body)
        if isinstance(a, Guard):
            if not self._arity_ok(a.pattern, b):
                return FAIL_S
            return _guard(a.pattern, self.unify(a.body, b))
        if isinstance(b, Guard):
            if not self._arity_ok(b.pattern, a):
                return FAIL_S
            return _guard(b.pattern, self.unify(a, b.body))
        return self.merge(a, b)

    def _arity_ok(self, pattern, other) -> bool:
        entries = _entries(other)
        if entries is None:
            return True  # a false gate fails on its own
        if isinstance(pattern, App):
            ar = len(pattern.args)
            if any(req and p and p[0] > ar for p, _, req in entries):
                self.hit("guard-jump-arity-fail")
                return False
        self.hit("guard-list" if isinstance(other, GatedList) else "guard-jump")
        return True

    def merge(self, a, b):
        ea, eb = _entries(a), _entries(b)
        if ea is None or eb is None:
            self.hit("fail")
            return FAIL_S
        listy = isinstance(a, GatedList) or isinstance(b, GatedList)
        if listy:
            self.hit("list-list")
        merged = {p: (item, req) for p, item, req in ea}
        for p, y, ry in eb:
            if p not in merged:
                merged[p] = (y, ry)
                continue
            x, rx = merged[p]
            if isinstance(x, tuple) and isinstance(y, tuple):
                if not listy:
                    self.hit("insert-insert-same")
                merged[p] = (reduce_tuple(y + x), rx or ry)
                continue
            if not listy:
                both = not isinstance(x, tuple) and not isinstance(y, tuple)
                self.hit("strategy-strategy-same" if both else "insert-strategy-same")
            sx, sy = _as_strategy(x), _as_strategy(y)
            xy = self.unify(sx, sy)
            if rx and ry:
                out = xy
            elif rx:
                out = flat_choice(xy, sx)
            elif ry:
                out = flat_choice(xy, sy)
            else:
                out = flat_choice(xy, flat_choice(sx, sy))
            merged[p] = (out, rx or ry)
        if not listy and len(merged) > 1:
            self.hit("jump-jump-distinct")
        if len(merged) > 1 and merged.get(EPS, (None,))[0] == (HOLE,):
            del merged[EPS]  # an identity insertion at the root does nothing
        entries, required = [], set()
        for p, (item, req) in merged.items():
            if isinstance(item, tuple):
                entries.append(AtInsert(p, item))
            elif isinstance(item, AtInsert) and item.position == EPS:
                entries.append(AtInsert(p, item.contexts))
            elif isinstance(item, Fail) and req:
                return FAIL_S
            else:
                entries.append(At(p, item))
            if req:
                required.add(p)
        return make_list(entries, required)


def unify_ce(a, b, names: NameSupply = None, coverage: Counter = None):
    """``a ⊞ b`` for canonical, closed, well-founded operands."""
    return Unifier(names, coverage)(a, b)


def combine_ce(a, b, names: NameSupply = None, coverage: Counter = None):
    """``(a ⊞ b) <+ a <+ b``."""
    return Choice(unify_ce(a, b, names, coverage), Choice(a, b))


def unify_general(a, b, names: NameSupply = None, coverage: Counter = None):
    return unify_ce(to_canonical(a), to_canonical(b), names, coverage)


def combine_general(a, b, names: NameSupply = None, coverage: Counter = None):
    return combine_ce(to_canonical(a), to_canonical(b), names, coverage)
