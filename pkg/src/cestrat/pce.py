"""Position-based insertion lists and their unification and combination.

A position-based CE is either the failing list or an ordered list of
insertions ``@p.(c1, ..., cn)``.  Applying ``@p.(c1, ..., cn)`` to a term
wraps the subterm at ``p`` in the evaluated context tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .terms import (
    EPS,
    HOLE,
    Position,
    Term,
    TermError,
    check_context,
    check_position,
    format_position,
    has_position,
    is_prefix,
    plug,
    position_key,
    replace_at,
    subterm_at,
)


class Failure:
    """The absorbing failure value of every application."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "FAIL"

    __str__ = __repr__

    def __reduce__(self):
        return (Failure, ())


FAIL = Failure()


def is_fail(x) -> bool:
    return x is FAIL


# -- context tuples ------------------------------------------------------------


def _drop_squares(seq: tuple) -> tuple:
    """Repeatedly delete the second copy of the leftmost shortest square ``ww``."""
    seq = tuple(seq)
    changed = True
    while changed:
        changed = False
        n = len(seq)
        for k in range(1, n // 2 + 1):
            for i in range(0, n - 2 * k + 1):
                if seq[i : i + k] == seq[i + k : i + 2 * k]:
                    seq = seq[: i + k] + seq[i + 2 * k :]
                    changed = True
                    break
            if changed:
                break
    return seq


def reduce_tuple(contexts: tuple) -> tuple:
    """Normal form of a context tuple.

    Holes are neutral and removed; adjacent repeated blocks collapse to one
    copy.  A tuple that reduces to nothing is ``(HOLE,)``.
    """
    seq = tuple(c for c in contexts if c != HOLE)
    seq = _drop_squares(seq)
    return seq or (HOLE,)


def eval_tuple(contexts: tuple) -> Term:
    """Evaluate a non-empty context tuple to a single context (first is outermost)."""
    if not contexts:
        raise TermError("cannot evaluate an empty context tuple")
    seq = reduce_tuple(contexts)
    out = seq[-1]
    for c in reversed(seq[:-1]):
        out = plug(c, out)
    return out


# -- position-based CEs ----------------------------------------------------------


@dataclass(frozen=True)
class Insertion:
    position: Position
    contexts: tuple

    def __str__(self) -> str:
        return f"@{format_position(self.position)}.{{{','.join(map(str, self.contexts))}}}"


@dataclass(frozen=True)
class PCE:
    """``entries is None`` is the failing PCE."""

    entries: Optional[tuple]

    @property
    def failed(self) -> bool:
        return self.entries is None

    def positions(self) -> list:
        return [] if self.entries is None else [e.position for e in self.entries]

    def __str__(self) -> str:
        from .syntax import format_pce

        return format_pce(self)


PCE_FAIL = PCE(None)
IDENTITY = PCE((Insertion(EPS, (HOLE,)),))


def insertion(position, *contexts) -> Insertion:
    if not contexts:
        raise TermError("an insertion needs at least one context")
    return Insertion(check_position(position), tuple(check_context(c) for c in contexts))


def pce(*entries: Insertion) -> PCE:
    if not entries:
        raise TermError("use PCE_FAIL for the failing list; a list needs an entry")
    return PCE(tuple(entries))


def prefix_pce(p: Position, e: PCE) -> PCE:
    """``p . E``: shift every insertion below ``p``."""
    if e.failed:
        return e
    return PCE(tuple(Insertion(p + x.position, x.contexts) for x in e.entries))


def well_founded_violation(e: PCE) -> Optional[str]:
    """None when well-founded, otherwise a description of the violated condition.

    Positions are pairwise distinct, and no insertion happens at a strict
    prefix of a later insertion's position (deeper insertions come first).
    """
    if e.failed:
        return None
    ps = e.positions()
    if len(set(ps)) != len(ps):
        return "a position occurs more than once"
    for i, p in enumerate(ps):
        for q in ps[i + 1 :]:
            if p != q and is_prefix(p, q):
                return (
                    f"@{format_position(p)} comes before @{format_position(q)}, "
                    "which lies below it"
                )
    return None


def is_well_founded_pce(e: PCE) -> bool:
    return well_founded_violation(e) is None


def apply_pce(e: PCE, t):
    if e.failed or is_fail(t):
        return FAIL
    for ins in e.entries:
        if not has_position(t, ins.position):
            return FAIL
        ctx = eval_tuple(ins.contexts)
        t = replace_at(t, ins.position, plug(ctx, subterm_at(t, ins.position)))
    return t


def sort_entries(entries) -> tuple:
    return tuple(sorted(entries, key=lambda x: position_key(x.position)))


def unify_pce(e1: PCE, e2: PCE) -> PCE:
    """Merge two insertion lists; at a shared position the second operand's
    contexts go first (outermost)."""
    if e1.failed or e2.failed:
        return PCE_FAIL
    merged = {x.position: x.contexts for x in e1.entries}
    for y in e2.entries:
        if y.position in merged:
            merged[y.position] = y.contexts + merged[y.position]
        else:
            merged[y.position] = y.contexts
    return PCE(sort_entries(Insertion(p, cs) for p, cs in merged.items()))


def combine_pce(e1: PCE, e2: PCE) -> PCE:
    if e1.failed:
        return e2
    if e2.failed:
        return e1
    return unify_pce(e1, e2)


def normalize_pce(e: PCE) -> PCE:
    """Canonical representative: deep-first order, reduced tuples, and no
    identity insertions (``@p.{[]}``) unless nothing else is left."""
    if e.failed:
        return e
    entries = [Insertion(x.position, reduce_tuple(x.contexts)) for x in e.entries]
    entries = [x for x in entries if x.contexts != (HOLE,)]
    if not entries:
        return IDENTITY
    return PCE(sort_entries(entries))


def eq_pce(e1: PCE, e2: PCE) -> bool:
    return normalize_pce(e1) == normalize_pce(e2)
