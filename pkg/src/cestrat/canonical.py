"""Rewrite well-founded strategies into canonical form.

A strategy is canonical when every jump is to a position of length at most
one and every gate is ``true`` or a conjunction of single-step position
variables.  The rewrite first replaces each gate by a left choice over the
subsets of entries that satisfy it (largest subsets first), then splits
multi-step jumps into nested single-step ones.
"""

from __future__ import annotations

from .strategy import (
    FAIL_S,
    At,
    AtInsert,
    Choice,
    Const,
    GatedList,
    Guard,
    Mu,
    Or,
    PosVar,
    StrategyError,
    all_subsets_desc,
    choice,
    conj,
    conjunction_vars,
    eval_formula,
    walk,
)
from .pce import sort_entries
from .terms import EPS, HOLE

MAX_EXPANSION = 4


class ExpansionLimit(StrategyError):
    pass


def to_dnf(phi) -> list:
    """Disjunctive normal form as a list of conjunctions (``[]`` is false)."""

    def clauses(f) -> list:
        if isinstance(f, Const):
            return [()] if f.value else []
        if isinstance(f, PosVar):
            return [(f.position,)]
        if isinstance(f, Or):
            return clauses(f.left) + clauses(f.right)
        out = []
        for a in clauses(f.left):
            for b in clauses(f.right):
                out.append(a + tuple(p for p in b if p not in a))
        return out

    seen, out = set(), []
    for c in clauses(phi):
        key = frozenset(c)
        if key not in seen:
            seen.add(key)
            out.append(conj(PosVar(p) for p in c))
    return out


def make_list(entries, required):
    """A gated list over ``entries`` requiring exactly the positions in ``required``.

    Single required entries and lone root insertions collapse to plain jumps.
    """
    entries = sort_entries(entries)
    required = {p for p in required if p != EPS}
    if len(entries) == 1:
        e = entries[0]
        if e.position == EPS and isinstance(e, AtInsert):
            return e
        if e.position in required:
            return e
    return GatedList(entries, conj(PosVar(p) for p in sorted(required)))


def expand_disjunction(entries, phi, limit: int = MAX_EXPANSION):
    """Left choice over the entry subsets that satisfy ``phi``, largest first.

    Root insertions always succeed, so they are kept in every branch and have
    no variable.  A branch for the empty subset is emitted only when ``phi``
    holds with every entry failing.
    """
    entries = tuple(entries)
    roots = [e for e in entries if e.position == EPS]
    if any(isinstance(e, At) for e in roots):
        if len(entries) != 1:
            raise StrategyError("a root strategy entry must be alone in its list")
        if eval_formula({}, phi):
            return Choice(entries[0].body, AtInsert(EPS, (HOLE,)))
        return FAIL_S
    others = [e for e in entries if e.position != EPS]
    if len(others) > limit:
        raise ExpansionLimit(
            f"gated list with {len(others)} entries exceeds the expansion limit of {limit}"
        )
    branches = []
    for subset in all_subsets_desc(others):
        nu = {e.position: False for e in others}
        nu.update({e.position: True for e in subset})
        if not eval_formula(nu, phi):
            continue
        if not subset:
            branches.append(roots[0] if roots else AtInsert(EPS, (HOLE,)))
        else:
            branches.append(make_list(list(subset) + roots, {e.position for e in subset}))
    return choice(*branches)


def _map(s, fn):
    """Rebuild ``s`` bottom-up, applying ``fn`` to every rebuilt node."""
    if isinstance(s, Guard):
        s = Guard(s.pattern, _map(s.body, fn))
    elif isinstance(s, Choice):
        s = Choice(_map(s.left, fn), _map(s.right, fn))
    elif isinstance(s, Mu):
        s = Mu(s.var, _map(s.body, fn))
    elif isinstance(s, At):
        s = At(s.position, _map(s.body, fn))
    elif isinstance(s, GatedList):
        # entries keep their own positions; only their bodies are rebuilt
        s = GatedList(
            tuple(At(e.position, _map(e.body, fn)) if isinstance(e, At) else e for e in s.entries),
            s.formula,
        )
    return fn(s)


def expand_gates(s, limit: int = MAX_EXPANSION):
    """Replace every gate by a choice of lists with conjunctive, total gates."""

    def fn(n):
        if isinstance(n, GatedList):
            return expand_disjunction(n.entries, n.formula, limit)
        return n

    return _map(s, fn)


def _split_at(p, body):
    for i in reversed(p[1:]):
        body = At((i,), body)
    return At(p[:1], body)


def _split_list(g: GatedList):
    required = conjunction_vars(g.formula)
    if required is None:
        raise StrategyError("split_positions needs conjunctive gates")
    outer = [e for e in g.entries if e.position == EPS]
    outer_required = set()
    groups: dict = {}
    for e in g.entries:
        if e.position != EPS:
            groups.setdefault(e.position[0], []).append(e)
    for i, members in sorted(groups.items()):
        inner = [_shift(e) for e in members]
        inner_required = {e.position[1:] for e in members if e.position in required}
        if len(inner) == 1 and inner[0].position == EPS:
            e = inner[0]
            outer.append(AtInsert((i,), e.contexts) if isinstance(e, AtInsert) else At((i,), e.body))
            if (i,) in required:
                outer_required.add((i,))
            continue
        if inner_required:
            outer_required.add((i,))
        outer.append(At((i,), split_positions(make_list(inner, inner_required))))
    return make_list(outer, outer_required)


def _shift(e):
    if isinstance(e, AtInsert):
        return AtInsert(e.position[1:], e.contexts)
    return At(e.position[1:], e.body)


def split_positions(s):
    """Replace multi-step jumps ``@i.p.S`` by ``@i.(@p.S)`` and regroup list
    entries by their first step."""

    def fn(n):
        if isinstance(n, AtInsert) and len(n.position) > 1:
            return _split_at(n.position[:-1], AtInsert(n.position[-1:], n.contexts))
        if isinstance(n, At) and len(n.position) > 1:
            return _split_at(n.position, n.body)
        if isinstance(n, GatedList) and any(len(e.position) > 1 for e in n.entries):
            return _split_list(n)
        return n

    return _map(s, fn)


def to_canonical(s, limit: int = MAX_EXPANSION):
    return split_positions(expand_gates(s, limit))


def is_canonical(s) -> bool:
    for n in walk(s):
        if isinstance(n, (At, AtInsert)) and len(n.position) > 1:
            return False
        if isinstance(n, GatedList):
            vs = conjunction_vars(n.formula)
            if vs is None or any(len(p) != 1 for p in vs):
                return False
    return True
