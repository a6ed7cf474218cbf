"""Context-embedding strategies: syntax tree, failure formulas and semantics.

Strategy constructors::

    Fail                      always fails
    FixVar(X)                 a fixed-point variable
    Guard(u, S)               (u ; S)      run S when the pattern u matches
    GuardInsert(u, ctxs)      (u => {..})  wrap the term when u matches
    Choice(S1, S2)            S1 <+ S2     left-biased choice
    Mu(X, S)                  mu X . S
    At(p, S)                  @p . S       run S on the subterm at p
    AtInsert(p, ctxs)         @p . {..}    wrap the subterm at p
    GatedList(entries, phi)   [@p1.S1, ... | phi]

A gated list runs every entry on the input; entry ``i`` succeeding sets the
position variable ``x(p_i)``.  If ``phi`` holds, the successful entries are
applied in order and the failing ones act as the identity; otherwise the
whole list fails.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .pce import FAIL, eval_tuple
from .terms import (
    EPS,
    Position,
    Signature,
    Var,
    App,
    below_or_parallel,
    check_context,
    check_position,
    depth,
    format_position,
    has_position,
    is_prefix,
    matches,
    parallel,
    plug,
    replace_at,
    subterm_at,
)


class StrategyError(ValueError):
    """Contract violation: an ill-formed, open or non-well-founded strategy."""


class UnboundVariable(StrategyError):
    pass


# -- Boolean failure formulas -----------------------------------------------------


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class PosVar:
    position: Position


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


Formula = Union[Const, PosVar, And, Or]
TRUE = Const(True)
FALSE = Const(False)


def x(*position: int) -> PosVar:
    return PosVar(check_position(position))


def conj(vars_) -> Formula:
    """Conjunction of position variables; the empty conjunction is ``true``."""
    out = None
    for v in vars_:
        v = v if isinstance(v, PosVar) else PosVar(tuple(v))
        out = v if out is None else And(out, v)
    return TRUE if out is None else out


def disj(fs) -> Formula:
    out = None
    for f in fs:
        out = f if out is None else Or(out, f)
    return FALSE if out is None else out


def formula_vars(phi: Formula) -> set:
    if isinstance(phi, PosVar):
        return {phi.position}
    if isinstance(phi, (And, Or)):
        return formula_vars(phi.left) | formula_vars(phi.right)
    return set()


def eval_formula(nu, phi: Formula) -> bool:
    """Evaluate ``phi`` under the valuation ``nu`` (position -> bool)."""
    if isinstance(phi, Const):
        return phi.value
    if isinstance(phi, PosVar):
        try:
            return bool(nu[phi.position])
        except KeyError:
            raise UnboundVariable(f"x({format_position(phi.position)}) has no value") from None
    if isinstance(phi, And):
        return eval_formula(nu, phi.left) and eval_formula(nu, phi.right)
    return eval_formula(nu, phi.left) or eval_formula(nu, phi.right)


def conjunction_vars(phi: Formula) -> Optional[set]:
    """The variable set of ``phi`` if it is ``true`` or a conjunction of variables."""
    if phi == TRUE:
        return set()
    if isinstance(phi, PosVar):
        return {phi.position}
    if isinstance(phi, And):
        left, right = conjunction_vars(phi.left), conjunction_vars(phi.right)
        if left is None or right is None:
            return None
        return left | right
    return None


# -- strategies ----------------------------------------------------------------------


@dataclass(frozen=True)
class Fail:
    pass


@dataclass(frozen=True)
class FixVar:
    name: str


@dataclass(frozen=True)
class Guard:
    pattern: object
    body: "Strategy"


@dataclass(frozen=True)
class GuardInsert:
    pattern: object
    contexts: tuple


@dataclass(frozen=True)
class Choice:
    left: "Strategy"
    right: "Strategy"


@dataclass(frozen=True)
class Mu:
    var: str
    body: "Strategy"


@dataclass(frozen=True)
class At:
    position: Position
    body: "Strategy"


@dataclass(frozen=True)
class AtInsert:
    position: Position
    contexts: tuple


@dataclass(frozen=True)
class GatedList:
    entries: tuple  # of At | AtInsert
    formula: Formula


Strategy = Union[Fail, FixVar, Guard, GuardInsert, Choice, Mu, At, AtInsert, GatedList]
FAIL_S = Fail()


def at(position, body) -> At:
    return At(check_position(position), body)


def at_insert(position, *contexts) -> AtInsert:
    return AtInsert(check_position(position), tuple(check_context(c) for c in contexts))


def guard_insert(pattern, *contexts) -> GuardInsert:
    return GuardInsert(pattern, tuple(check_context(c) for c in contexts))


def choice(*alternatives) -> Strategy:
    """Right-nested left choice; the empty choice is ``fail``."""
    if not alternatives:
        return FAIL_S
    out = alternatives[-1]
    for s in reversed(alternatives[:-1]):
        out = Choice(s, out)
    return out


def gated(entries, formula: Formula) -> GatedList:
    return GatedList(tuple(entries), formula)


def children(s: Strategy) -> tuple:
    if isinstance(s, (Guard, Mu, At)):
        return (s.body,)
    if isinstance(s, Choice):
        return (s.left, s.right)
    if isinstance(s, GatedList):
        return s.entries
    return ()


def walk(s: Strategy) -> Iterator[Strategy]:
    stack = [s]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(children(n)))


def free_vars(s: Strategy) -> set:
    if isinstance(s, FixVar):
        return {s.name}
    if isinstance(s, Mu):
        return free_vars(s.body) - {s.var}
    out = set()
    for c in children(s):
        out |= free_vars(c)
    return out


def is_closed(s: Strategy) -> bool:
    return not free_vars(s)


def bound_names(s: Strategy) -> set:
    return {n.var for n in walk(s) if isinstance(n, Mu)} | {
        n.name for n in walk(s) if isinstance(n, FixVar)
    }


class NameSupply:
    """Deterministic fresh fixed-point variables ``Z0, Z1, ...``."""

    def __init__(self, avoid=(), prefix: str = "Z"):
        self.avoid = set(avoid)
        self.prefix = prefix
        self.counter = 0

    def fresh(self) -> str:
        while True:
            name = f"{self.prefix}{self.counter}"
            self.counter += 1
            if name not in self.avoid:
                self.avoid.add(name)
                return name


# -- well-foundedness ------------------------------------------------------------------


def list_violation(g: GatedList) -> Optional[str]:
    if not g.entries:
        return "a gated list needs at least one entry"
    ps = [e.position for e in g.entries]
    if len(set(ps)) != len(ps):
        return "a gated list uses a position twice"
    for i, p in enumerate(ps):
        for q in ps[i + 1 :]:
            if is_prefix(p, q) and p != q:
                return (
                    f"@{format_position(p)} comes before @{format_position(q)}, which lies below it"
                )
    strat = [e.position for e in g.entries if isinstance(e, At)]
    ins = [e.position for e in g.entries if isinstance(e, AtInsert)]
    for i, p in enumerate(strat):
        for q in strat[i + 1 :]:
            if not parallel(p, q):
                return (
                    f"strategy entries @{format_position(p)} and @{format_position(q)} "
                    "are not parallel"
                )
    for q in ins:
        for p in strat:
            if not below_or_parallel(q, p):
                return (
                    f"insertion @{format_position(q)} lies inside strategy entry "
                    f"@{format_position(p)}"
                )
    allowed = set(ps) - {EPS}
    extra = formula_vars(g.formula) - allowed
    if extra:
        shown = ", ".join(f"x({format_position(p)})" for p in sorted(extra))
        return f"formula mentions {shown}, which is not a non-root entry position"
    return None


def well_founded_violation(s: Strategy) -> Optional[str]:
    """None if ``s`` is well-founded, else the violated clause.

    (i) every path from a ``mu X`` binder to an occurrence of ``X`` crosses a
    jump to a non-root position; (ii) every gated list is well-formed
    (see :func:`list_violation`).
    """

    def go(n, unguarded: frozenset) -> Optional[str]:
        if isinstance(n, FixVar):
            if n.name in unguarded:
                return f"the cycle through {n.name} does not pass through a position"
            return None
        if isinstance(n, Mu):
            return go(n.body, (unguarded - {n.var}) | {n.var})
        if isinstance(n, At):
            return go(n.body, frozenset() if n.position else unguarded)
        if isinstance(n, GatedList):
            msg = list_violation(n)
            if msg:
                return msg
        for c in children(n):
            r = go(c, unguarded)
            if r:
                return r
        return None

    return go(s, frozenset())


def is_well_founded_ce(s: Strategy) -> bool:
    return well_founded_violation(s) is None


def check_strategy(s: Strategy) -> Strategy:
    """Raise :class:`StrategyError` unless ``s`` is closed and well-founded."""
    fv = free_vars(s)
    if fv:
        raise StrategyError(f"unbound fixed-point variables: {', '.join(sorted(fv))}")
    msg = well_founded_violation(s)
    if msg:
        raise StrategyError(f"not well-founded: {msg}")
    return s


# -- measures and collections --------------------------------------------------------


def delta_measure(s: Strategy) -> tuple:
    """(loop nesting, height), compared lexicographically."""
    if isinstance(s, (Fail, FixVar, AtInsert, GuardInsert)):
        return (0, 0)
    if isinstance(s, Mu):
        loops, height = delta_measure(s.body)
        return (loops + 1, height)
    if isinstance(s, At):
        return delta_measure(s.body)
    if isinstance(s, Guard):
        loops, height = delta_measure(s.body)
        return (loops, height + 1)
    loops, height = max(delta_measure(c) for c in children(s))
    return (loops, height + 1)


def formulas_of(s: Strategy) -> set:
    out = set()
    for n in walk(s):
        if isinstance(n, GatedList):
            out.add(n.formula)
    return out


def positions_of_ce(s: Strategy) -> set:
    return {n.position for n in walk(s) if isinstance(n, (At, AtInsert))}


# -- substitution of fixed-point variables ------------------------------------------


def subst_fixvar(s: Strategy, var: str, replacement: Strategy, names: NameSupply = None) -> Strategy:
    """Replace the free occurrences of ``var`` in ``s`` by ``replacement``.

    Binders that would capture a free variable of ``replacement`` are renamed
    using ``names`` (a fresh supply is created if none is given).
    """
    rfree = free_vars(replacement)
    if names is None and rfree:
        names = NameSupply(bound_names(s) | bound_names(replacement) | {var}, prefix="X")

    def go(n):
        if isinstance(n, FixVar):
            return replacement if n.name == var else n
        if isinstance(n, Mu):
            if n.var == var:
                return n
            if n.var in rfree:
                new = names.fresh()
                body = subst_fixvar(n.body, n.var, FixVar(new), names)
                return Mu(new, go(body))
            return Mu(n.var, go(n.body))
        if isinstance(n, Guard):
            return Guard(n.pattern, go(n.body))
        if isinstance(n, Choice):
            return Choice(go(n.left), go(n.right))
        if isinstance(n, At):
            return At(n.position, go(n.body))
        if isinstance(n, GatedList):
            return GatedList(tuple(go(e) for e in n.entries), n.formula)
        return n

    return go(s)


def iterate(s: Strategy, var: str, i: int) -> Strategy:
    """``S^i(fail)``: ``S`` nested ``i`` times around ``fail`` (``i >= 1``)."""
    if i < 1:
        raise ValueError("iterate needs i >= 1")
    out = subst_fixvar(s, var, FAIL_S)
    for _ in range(i - 1):
        out = subst_fixvar(s, var, out)
    return out


def unfold(m: Mu) -> Strategy:
    """``S(mu X. S)``: one unfolding of a closed fixed point."""
    return subst_fixvar(m.body, m.var, m)


def unfolding_bound(t) -> int:
    """Number of unfoldings a fixed point receives on ``t``."""
    return depth(t) + 1


# -- semantics ----------------------------------------------------------------------


def apply_ce(s: Strategy, t):
    """Apply a closed strategy to a term; returns a term or ``FAIL``.

    ``mu X. S`` on ``t`` behaves as ``S^(d+1)(fail)`` with ``d`` the depth of
    ``t``.  Fixed points are evaluated through an environment that counts the
    remaining unfoldings instead of building the iterates.
    """
    if t is FAIL:
        return FAIL
    return _apply(s, t, {})


def _apply(s, t, env):
    if isinstance(s, Fail):
        return FAIL
    if isinstance(s, FixVar):
        try:
            body, level, benv = env[s.name]
        except KeyError:
            raise UnboundVariable(f"fixed-point variable {s.name} is not bound") from None
        if level == 0:
            return FAIL
        return _apply(body, t, {**benv, s.name: (body, level - 1, benv)})
    if isinstance(s, Mu):
        return _apply(s.body, t, {**env, s.var: (s.body, depth(t), env)})
    if isinstance(s, Guard):
        return _apply(s.body, t, env) if matches(s.pattern, t) else FAIL
    if isinstance(s, GuardInsert):
        return plug(eval_tuple(s.contexts), t) if matches(s.pattern, t) else FAIL
    if isinstance(s, Choice):
        r = _apply(s.left, t, env)
        return _apply(s.right, t, env) if r is FAIL else r
    if isinstance(s, At):
        if not has_position(t, s.position):
            return FAIL
        r = _apply(s.body, subterm_at(t, s.position), env)
        return FAIL if r is FAIL else replace_at(t, s.position, r)
    if isinstance(s, AtInsert):
        if not has_position(t, s.position):
            return FAIL
        inner = subterm_at(t, s.position)
        return replace_at(t, s.position, plug(eval_tuple(s.contexts), inner))
    if isinstance(s, GatedList):
        nu = {e.position: _apply(e, t, env) is not FAIL for e in s.entries}
        if not eval_formula(nu, s.formula):
            return FAIL
        cur = t
        for e in s.entries:
            r = _apply(e, cur, env)
            if r is not FAIL:
                cur = r
        return cur
    raise StrategyError(f"not a strategy: {s!r}")


# -- traversal builders -----------------------------------------------------------------


def _symbol_pattern(name: str, arity: int):
    return App(name, tuple(Var(f"X{i}") for i in range(1, arity + 1)))


def one_left(s: Strategy, sig: Signature, var: str = "X") -> Strategy:
    """Apply ``s`` to the leftmost-outermost subterm where it succeeds.

    Constants contribute ``(a ; fail)``, which always fails, so they are left out.
    """
    branches = []
    for name, arity in sig.sorted():
        if arity == 0:
            continue
        inner = choice(*(GatedList((At((i,), FixVar(var)),), PosVar((i,))) for i in range(1, arity + 1)))
        branches.append(Guard(_symbol_pattern(name, arity), inner))
    return Mu(var, choice(s, *branches))


def top_down(s: Strategy, sig: Signature, var: str = "X") -> Strategy:
    """Apply ``s`` top-down, descending into children only where it fails."""
    branches = []
    for name, arity in sig.sorted():
        if arity == 0:
            continue
        entries = tuple(At((i,), FixVar(var)) for i in range(1, arity + 1))
        gate = disj(PosVar((i,)) for i in range(1, arity + 1))
        branches.append(Guard(_symbol_pattern(name, arity), GatedList(entries, gate)))
    return Mu(var, choice(s, *branches))


def entry_strategy(e) -> Strategy:
    """The body of a gated-list entry as a stand-alone strategy at the root."""
    if isinstance(e, AtInsert):
        return AtInsert(EPS, e.contexts)
    return e.body


def size(s: Strategy) -> int:
    return sum(1 for _ in walk(s))


def all_subsets_desc(items: list) -> Iterator[tuple]:
    """Subsets by decreasing size, each size in lexicographic order of ``items``."""
    for k in range(len(items), -1, -1):
        yield from itertools.combinations(items, k)
