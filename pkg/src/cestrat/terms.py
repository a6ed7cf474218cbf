"""First-order terms, contexts, positions, substitutions, matching and unification.

Terms are immutable.  A position is a plain tuple of positive integers; the
empty tuple is the root position.  A context is an ordinary term containing
exactly one occurrence of the hole constant :data:`HOLE`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Union


class TermError(ValueError):
    """Malformed term, context or position."""


class PositionError(TermError):
    """A position does not exist in the term it was applied to."""


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class App:
    symbol: str
    args: tuple = ()

    def __str__(self) -> str:
        if self.symbol == HOLE_SYMBOL:
            return "[]"
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(map(str, self.args))})"


Term = Union[Var, App]
Position = tuple  # tuple[int, ...]
Substitution = Mapping[str, Term]

EPS: Position = ()
HOLE_SYMBOL = "□"
HOLE = App(HOLE_SYMBOL)


def const(name: str) -> App:
    return App(name, ())


def app(symbol: str, *args: Term) -> App:
    return App(symbol, tuple(args))


# -- signatures --------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """A finite set of ``(name, arity)`` pairs.

    The same name may be declared with several arities (``x/0`` and ``x/1``);
    a symbol is identified by its name together with its arity.
    """

    symbols: frozenset

    def __post_init__(self):
        for name, arity in self.symbols:
            if not isinstance(arity, int) or arity < 0:
                raise TermError(f"bad arity for {name}: {arity!r}")
            if name == HOLE_SYMBOL:
                raise TermError("the hole cannot be declared as a symbol")
        if not any(arity == 0 for _, arity in self.symbols):
            raise TermError("a signature needs at least one constant")

    @classmethod
    def of(cls, *decls) -> "Signature":
        """``Signature.of(("f", 2), ("a", 0))`` or ``Signature.of("f/2", "a/0")``."""
        pairs = set()
        for d in decls:
            if isinstance(d, str):
                name, _, arity = d.rpartition("/")
                pairs.add((name, int(arity)))
            else:
                pairs.add((d[0], int(d[1])))
        return cls(frozenset(pairs))

    def sorted(self) -> list:
        return sorted(self.symbols, key=lambda s: (s[1], s[0]))

    def constants(self) -> list:
        return [name for name, arity in self.sorted() if arity == 0]

    def max_arity(self) -> int:
        return max(arity for _, arity in self.symbols)

    def check(self, t: Term) -> None:
        """Raise :class:`TermError` unless every symbol of ``t`` is declared."""
        for s in subterms(t):
            if isinstance(s, App) and s.symbol != HOLE_SYMBOL:
                if (s.symbol, len(s.args)) not in self.symbols:
                    raise TermError(f"{s.symbol}/{len(s.args)} is not in the signature")

    def __str__(self) -> str:
        return "\n".join(f"{n}/{a}" for n, a in self.sorted())


# -- positions ---------------------------------------------------------------


class Relation(enum.Enum):
    EQUAL = "equal"
    STRICT_PREFIX = "strict-prefix"
    STRICT_EXTENSION = "strict-extension"
    PARALLEL = "parallel"


def is_prefix(p: Position, q: Position) -> bool:
    """p <= q in the prefix order."""
    return len(p) <= len(q) and q[: len(p)] == p


def compare_positions(p: Position, q: Position) -> Relation:
    if p == q:
        return Relation.EQUAL
    if is_prefix(p, q):
        return Relation.STRICT_PREFIX
    if is_prefix(q, p):
        return Relation.STRICT_EXTENSION
    return Relation.PARALLEL


def parallel(p: Position, q: Position) -> bool:
    return compare_positions(p, q) is Relation.PARALLEL


def below_or_parallel(p: Position, q: Position) -> bool:
    """``p < q or p || q`` (p is a strict prefix of q, or they are incomparable)."""
    return compare_positions(p, q) in (Relation.STRICT_PREFIX, Relation.PARALLEL)


def below_eq_or_parallel(p: Position, q: Position) -> bool:
    return compare_positions(p, q) is not Relation.STRICT_EXTENSION


_END = float("inf")


def position_key(p: Position):
    """Sort key putting descendants before their ancestors.

    Lexicographic order where the end of a sequence counts as larger than any
    index: ``1.1 < 1`` and ``1.2 < 2.1``.  Sorting insertions with this key
    performs deeper insertions first, so earlier insertions never move the
    positions used by later ones.
    """
    return tuple(p) + (_END,)


def format_position(p: Position) -> str:
    return ".".join(map(str, p)) if p else "eps"


def check_position(p) -> Position:
    p = tuple(p)
    if any((not isinstance(i, int)) or i < 1 for i in p):
        raise TermError(f"positions are sequences of positive integers, got {p!r}")
    return p


# -- structural operations ----------------------------------------------------


def subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, App):
            stack.extend(reversed(s.args))


def positions_of(t: Term) -> set:
    out = set()

    def walk(s, p):
        out.add(p)
        if isinstance(s, App):
            for i, a in enumerate(s.args, 1):
                walk(a, p + (i,))

    walk(t, EPS)
    return out


def has_position(t: Term, p: Position) -> bool:
    for i in p:
        if not isinstance(t, App) or not 1 <= i <= len(t.args):
            return False
        t = t.args[i - 1]
    return True


def subterm_at(t: Term, p: Position) -> Term:
    s = t
    for i in p:
        if not isinstance(s, App) or not 1 <= i <= len(s.args):
            raise PositionError(f"position {format_position(p)} is not in {t}")
        s = s.args[i - 1]
    return s


def replace_at(t: Term, p: Position, s: Term) -> Term:
    if not p:
        return s
    i = p[0]
    if not isinstance(t, App) or not 1 <= i <= len(t.args):
        raise PositionError(f"position {format_position(p)} is not in {t}")
    args = list(t.args)
    args[i - 1] = replace_at(args[i - 1], p[1:], s)
    return App(t.symbol, tuple(args))


def depth(t: Term) -> int:
    if isinstance(t, Var) or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def variables(t: Term) -> set:
    return {s.name for s in subterms(t) if isinstance(s, Var)}


# -- contexts -----------------------------------------------------------------


def hole_count(t: Term) -> int:
    return sum(1 for s in subterms(t) if s == HOLE)


def is_context(t: Term) -> bool:
    return hole_count(t) == 1


def check_context(t: Term) -> Term:
    n = hole_count(t)
    if n != 1:
        raise TermError(f"a context needs exactly one hole, {t} has {n}")
    return t


def hole_position(c: Term) -> Position:
    def find(s, p):
        if s == HOLE:
            return p
        if isinstance(s, App):
            for i, a in enumerate(s.args, 1):
                r = find(a, p + (i,))
                if r is not None:
                    return r
        return None

    p = find(c, EPS)
    if p is None:
        raise TermError(f"{c} has no hole")
    return p


def plug(c: Term, t: Term) -> Term:
    """Replace the hole of context ``c`` by ``t`` (a term or another context)."""
    if c == HOLE:
        return t
    if isinstance(c, Var):
        raise TermError(f"{c} has no hole")
    args = list(c.args)
    for i, a in enumerate(args):
        if isinstance(a, App) and hole_count(a):
            args[i] = plug(a, t)
            return App(c.symbol, tuple(args))
    raise TermError(f"{c} has no hole")


# -- substitutions, matching, unification --------------------------------------


def apply_subst(sigma: Substitution, t: Term) -> Term:
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if not t.args:
        return t
    return App(t.symbol, tuple(apply_subst(sigma, a) for a in t.args))


def normalize_subst(sigma: Substitution) -> dict:
    """Drop identity bindings so the domain is exactly ``{x | sigma(x) != x}``."""
    return {x: s for x, s in sigma.items() if s != Var(x)}


def match_term(pattern: Term, t: Term) -> Optional[dict]:
    """The substitution ``s`` with ``s(pattern) == t``, or None.

    Matching is one-sided: variables occurring in ``t`` are treated as
    constants.
    """
    sigma: dict = {}
    stack = [(pattern, t)]
    while stack:
        u, s = stack.pop()
        if isinstance(u, Var):
            bound = sigma.get(u.name)
            if bound is None:
                sigma[u.name] = s
            elif bound != s:
                return None
        elif isinstance(s, App) and u.symbol == s.symbol and len(u.args) == len(s.args):
            stack.extend(zip(u.args, s.args))
        else:
            return None
    return normalize_subst(sigma)


def matches(pattern: Term, t: Term) -> bool:
    return match_term(pattern, t) is not None


def _walk(t: Term, sigma: dict) -> Term:
    while isinstance(t, Var) and t.name in sigma:
        t = sigma[t.name]
    return t


def _occurs(name: str, t: Term, sigma: dict) -> bool:
    t = _walk(t, sigma)
    if isinstance(t, Var):
        return t.name == name
    return any(_occurs(name, a, sigma) for a in t.args)


def _resolve(t: Term, sigma: dict) -> Term:
    t = _walk(t, sigma)
    if isinstance(t, Var) or not t.args:
        return t
    return App(t.symbol, tuple(_resolve(a, sigma) for a in t.args))


def mgu(u: Term, v: Term) -> Optional[dict]:
    """Most general unifier of ``u`` and ``v`` (shared variable namespace).

    Returns an idempotent substitution, or None when the terms do not unify.
    The occurs check is enforced.
    """
    sigma: dict = {}  # triangular form while solving
    stack = [(u, v)]
    while stack:
        a, b = stack.pop()
        a, b = _walk(a, sigma), _walk(b, sigma)
        if a == b:
            continue
        if isinstance(a, Var):
            if _occurs(a.name, b, sigma):
                return None
            sigma[a.name] = b
        elif isinstance(b, Var):
            if _occurs(b.name, a, sigma):
                return None
            sigma[b.name] = a
        elif a.symbol == b.symbol and len(a.args) == len(b.args):
            stack.extend(zip(a.args, b.args))
        else:
            return None
    return normalize_subst({x: _resolve(Var(x), sigma) for x in sigma})


def rename_apart(t: Term, avoid: set) -> Term:
    """Rename the variables of ``t`` so none of them is in ``avoid``."""
    taken = set(avoid) | variables(t)
    ren = {}
    for x in sorted(variables(t)):
        if x in avoid:
            y = x + "'"
            while y in taken:
                y += "'"
            taken.add(y)
            ren[x] = Var(y)
    return apply_subst(ren, t) if ren else t


def meet(u: Term, v: Term) -> Optional[Term]:
    """The most general common instance ``u /\\ v`` or None.

    Pattern variables are local to their pattern, so ``v`` is renamed apart
    from ``u`` before unifying; with that, ``meet(u, v)`` matches a term
    exactly when both ``u`` and ``v`` do.
    """
    v = rename_apart(v, variables(u))
    gamma = mgu(u, v)
    if gamma is None:
        return None
    return apply_subst(gamma, u)


def compose(theta: Substitution, gamma: Substitution) -> dict:
    """``theta o gamma``: apply gamma first, then theta."""
    out = {x: apply_subst(theta, s) for x, s in gamma.items()}
    for x, s in theta.items():
        out.setdefault(x, s)
    return normalize_subst(out)
