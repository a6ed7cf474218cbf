"""Compile a strategy, relative to a concrete term, into an insertion list."""

from __future__ import annotations

from .pce import PCE, PCE_FAIL, Insertion, apply_pce, prefix_pce, sort_entries
from .strategy import (
    At,
    AtInsert,
    Choice,
    Fail,
    FixVar,
    GatedList,
    Guard,
    GuardInsert,
    Mu,
    StrategyError,
    UnboundVariable,
    eval_formula,
)
from .terms import EPS, depth, has_position, matches, subterm_at


def psi(s, t) -> PCE:
    """The insertion list that ``s`` performs on ``t`` (``PCE_FAIL`` on failure).

    Fixed points get the same unfolding budget as in :func:`apply_ce`.
    """
    return _psi(s, t, {})


def _psi(s, t, env) -> PCE:
    if isinstance(s, Fail):
        return PCE_FAIL
    if isinstance(s, FixVar):
        try:
            body, level, benv = env[s.name]
        except KeyError:
            raise UnboundVariable(f"fixed-point variable {s.name} is not bound") from None
        if level == 0:
            return PCE_FAIL
        return _psi(body, t, {**benv, s.name: (body, level - 1, benv)})
    if isinstance(s, Mu):
        return _psi(s.body, t, {**env, s.var: (s.body, depth(t), env)})
    if isinstance(s, Guard):
        return _psi(s.body, t, env) if matches(s.pattern, t) else PCE_FAIL
    if isinstance(s, GuardInsert):
        return PCE((Insertion(EPS, s.contexts),)) if matches(s.pattern, t) else PCE_FAIL
    if isinstance(s, Choice):
        r = _psi(s.left, t, env)
        return _psi(s.right, t, env) if r.failed else r
    if isinstance(s, AtInsert):
        if not has_position(t, s.position):
            return PCE_FAIL
        return PCE((Insertion(s.position, s.contexts),))
    if isinstance(s, At):
        if not has_position(t, s.position):
            return PCE_FAIL
        return prefix_pce(s.position, _psi(s.body, subterm_at(t, s.position), env))
    if isinstance(s, GatedList):
        subs = [_psi(e, t, env) for e in s.entries]
        nu = {e.position: not r.failed for e, r in zip(s.entries, subs)}
        if not eval_formula(nu, s.formula):
            return PCE_FAIL
        out = [x for r in subs if not r.failed for x in r.entries]
        return PCE(sort_entries(out))
    raise StrategyError(f"not a strategy: {s!r}")


def psi_apply(s, t):
    """``Psi(s, t)`` applied back to ``t``."""
    return apply_pce(psi(s, t), t)
