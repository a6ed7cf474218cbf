"""Text syntax for terms, positions, contexts, signatures, PCEs and strategies.

Grammar (whitespace is insignificant)::

    term     ::= name | name '(' term {',' term} ')' | '[]'
    pos      ::= 'eps' | int {'.' int}
    ctxs     ::= '{' term {',' term} '}'
    pce      ::= 'fail' | '[' ins {',' ins} ']'        ins ::= '@' pos '.' ctxs
    phi      ::= disj        disj ::= conj {'\\/' conj}   conj ::= atom {'/\\' atom}
    atom     ::= 'true' | 'false' | 'x' '(' pos ')' | '(' phi ')'
    strategy ::= unary ['<+' strategy]
    unary    ::= 'fail' | FIXVAR | 'mu' FIXVAR '.' strategy
               | '(' term ';' strategy ')' | '(' term '=>' ctxs ')'
               | '@' pos '.' (unary | ctxs)
               | '[' entry {',' entry} '|' phi ']' | '(' strategy ')'

Names starting with an upper-case letter are variables (in terms) or
fixed-point variables (in strategies).  ``mu X . S`` extends as far right as
possible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .pce import PCE, PCE_FAIL, Insertion, sort_entries
from .strategy import (
    And,
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
    Or,
    PosVar,
    StrategyError,
)
from .terms import HOLE, HOLE_SYMBOL, App, Signature, TermError, Var, format_position


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.msg, self.line, self.col = msg, line, col


# -- lexer --------------------------------------------------------------------------

_PUNCT = ("<+", "=>", "/\\", "\\/", "[]", "(", ")", "{", "}", "[", "]", ",", ";", ".", "@", "|")


@dataclass(frozen=True)
class Token:
    kind: str  # 'name' | 'int' | 'punct' | 'eof'
    text: str
    line: int
    col: int


def _is_name_char(ch: str) -> bool:
    if ch == HOLE_SYMBOL or ch.isspace():
        return False
    return ch.isalnum() or ch in "_'" or ord(ch) > 127


def tokenize(src: str) -> list:
    out = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if ch == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        if ch == HOLE_SYMBOL:
            out.append(Token("punct", "[]", line, col))
            i, col = i + 1, col + 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            out.append(Token("int", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if _is_name_char(ch):
            j = i
            while j < n and _is_name_char(src[j]):
                j += 1
            out.append(Token("name", src[i:j], line, col))
            col += j - i
            i = j
            continue
        for p in _PUNCT:
            if src.startswith(p, i):
                out.append(Token("punct", p, line, col))
                i, col = i + len(p), col + len(p)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("eof", "", line, col))
    return out


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        return ParseError(f"{msg}, found {found!r}", tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def eat(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def name(self) -> str:
        if self.tok.kind != "name":
            raise self.error("expected a name")
        t = self.tok.text
        self.i += 1
        return t

    def end(self):
        if self.tok.kind != "eof":
            raise self.error("unexpected trailing input")

    # terms
    def term(self):
        if self.eat("[]"):
            return HOLE
        tok = self.tok
        if tok.kind not in ("name", "int"):
            raise self.error("expected a term")
        self.i += 1
        name = tok.text
        if self.eat("("):
            args = [self.term()]
            while self.eat(","):
                args.append(self.term())
            self.expect(")")
            if name[0].isupper():
                raise ParseError(f"variable {name} cannot take arguments", tok.line, tok.col)
            return App(name, tuple(args))
        return Var(name) if name[0].isupper() else App(name, ())

    def context(self):
        tok = self.tok
        c = self.term()
        n = sum(1 for _ in _holes(c))
        if n != 1:
            raise ParseError(f"a context needs exactly one hole, {c} has {n}", tok.line, tok.col)
        return c

    def contexts(self) -> tuple:
        self.expect("{")
        cs = [self.context()]
        while self.eat(","):
            cs.append(self.context())
        self.expect("}")
        return tuple(cs)

    def position(self) -> tuple:
        if self.tok.kind == "name" and self.tok.text == "eps":
            self.i += 1
            return ()
        if self.tok.kind != "int":
            raise self.error("expected a position")
        out = [self._index()]
        # a '.' followed by an integer continues the position
        while self.at(".") and self.toks[self.i + 1].kind == "int":
            self.i += 1
            out.append(self._index())
        return tuple(out)

    def _index(self) -> int:
        tok = self.tok
        v = int(tok.text)
        if v < 1:
            raise ParseError("position indices start at 1", tok.line, tok.col)
        self.i += 1
        return v

    # PCEs
    def pce(self) -> PCE:
        if self.tok.kind == "name" and self.tok.text == "fail":
            self.i += 1
            return PCE_FAIL
        self.expect("[")
        entries = [self.insertion()]
        while self.eat(","):
            entries.append(self.insertion())
        self.expect("]")
        return PCE(tuple(entries))

    def insertion(self) -> Insertion:
        self.expect("@")
        p = self.position()
        self.expect(".")
        return Insertion(p, self.contexts())

    # formulas
    def formula(self):
        f = self._conj()
        while self.eat("\\/"):
            f = Or(f, self._conj())
        return f

    def _conj(self):
        f = self._atom()
        while self.eat("/\\"):
            f = And(f, self._atom())
        return f

    def _atom(self):
        if self.eat("("):
            f = self.formula()
            self.expect(")")
            return f
        tok = self.tok
        if tok.kind == "name" and tok.text in ("true", "false"):
            self.i += 1
            return Const(tok.text == "true")
        if tok.kind == "name" and tok.text == "x":
            self.i += 1
            self.expect("(")
            p = self.position()
            self.expect(")")
            return PosVar(p)
        raise self.error("expected a formula")

    # strategies
    def strategy(self):
        s = self.unary()
        if self.eat("<+"):
            return Choice(s, self.strategy())
        return s

    def unary(self):
        tok = self.tok
        if tok.kind == "name" and tok.text == "fail":
            self.i += 1
            return Fail()
        if tok.kind == "name" and tok.text == "mu":
            self.i += 1
            var = self._fixvar()
            self.expect(".")
            return Mu(var, self.strategy())
        if tok.kind == "name" and tok.text[0].isupper():
            self.i += 1
            return FixVar(tok.text)
        if self.eat("@"):
            p = self.position()
            self.expect(".")
            if self.at("{"):
                return AtInsert(p, self.contexts())
            return At(p, self.unary())
        if self.at("["):
            return self.gated()
        if self.at("("):
            start = self.i
            self.i += 1
            first = None
            try:
                u = self.term()
                if self.eat(";"):
                    body = self.strategy()
                    self.expect(")")
                    return Guard(u, body)
                if self.eat("=>"):
                    cs = self.contexts()
                    self.expect(")")
                    return GuardInsert(u, cs)
            except ParseError as e:
                first = e
            self.i = start + 1
            try:
                s = self.strategy()
                self.expect(")")
            except ParseError as e:
                # report whichever reading got further
                if first is not None and (first.line, first.col) > (e.line, e.col):
                    raise first from None
                raise
            return s
        raise self.error("expected a strategy")

    def _fixvar(self) -> str:
        tok = self.tok
        if tok.kind != "name" or not tok.text[0].isupper():
            raise self.error("expected a fixed-point variable")
        self.i += 1
        return tok.text

    def gated(self):
        self.expect("[")
        entries = [self._entry()]
        while self.eat(","):
            entries.append(self._entry())
        self.expect("|")
        phi = self.formula()
        self.expect("]")
        return GatedList(tuple(entries), phi)

    def _entry(self):
        self.expect("@")
        p = self.position()
        self.expect(".")
        if self.at("{"):
            return AtInsert(p, self.contexts())
        return At(p, self.unary())


def _holes(t):
    stack = [t]
    while stack:
        s = stack.pop()
        if s == HOLE:
            yield s
        elif isinstance(s, App):
            stack.extend(s.args)


def _run(src: str, fn):
    p = Parser(src)
    out = fn(p)
    p.end()
    return out


def parse_term(src: str):
    return _run(src, Parser.term)


def parse_context(src: str):
    return _run(src, Parser.context)


def parse_position(src: str) -> tuple:
    return _run(src, Parser.position)


def parse_formula(src: str):
    return _run(src, Parser.formula)


def parse_pce(src: str) -> PCE:
    return _run(src, Parser.pce)


def parse_strategy(src: str):
    return _run(src, Parser.strategy)


def parse_signature(src: str) -> Signature:
    """One ``name/arity`` declaration per line; ``#`` starts a comment."""
    pairs = set()
    for lineno, raw in enumerate(src.splitlines(), 1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        name, slash, arity = text.rpartition("/")
        col = raw.index(text[0]) + 1
        if not slash or not name or not arity.strip().isdigit():
            raise ParseError(f"expected name/arity, found {text!r}", lineno, col)
        name = name.strip()
        if not all(_is_name_char(c) for c in name) or name[0].isupper():
            raise ParseError(f"bad symbol name {name!r}", lineno, col)
        pairs.add((name, int(arity)))
    try:
        return Signature(frozenset(pairs))
    except TermError as e:
        raise ParseError(str(e), 1, 1) from None


# -- printers -----------------------------------------------------------------------


def format_term(t) -> str:
    return str(t)


def format_contexts(cs) -> str:
    return "{" + ",".join(map(str, cs)) + "}"


def format_pce(e: PCE, raw: bool = True) -> str:
    if e.failed:
        return "fail"
    entries = e.entries if raw else sort_entries(e.entries)
    if not entries:
        return "[@eps.{[]}]"
    return "[" + ", ".join(f"@{format_position(x.position)}.{format_contexts(x.contexts)}" for x in entries) + "]"


def format_formula(phi, _prec: int = 0) -> str:
    if isinstance(phi, Const):
        return "true" if phi.value else "false"
    if isinstance(phi, PosVar):
        return f"x({format_position(phi.position)})"
    if isinstance(phi, And):
        s = f"{format_formula(phi.left, 1)} /\\ {format_formula(phi.right, 2)}"
        return f"({s})" if _prec > 1 else s
    s = f"{format_formula(phi.left, 0)} \\/ {format_formula(phi.right, 1)}"
    return f"({s})" if _prec > 0 else s


def format_strategy(s, raw: bool = True) -> str:
    """Print in the text syntax; ``raw=False`` sorts gated-list entries deep-first."""
    return _fmt(s, 0, raw)


def _fmt(s, prec: int, raw: bool) -> str:
    # prec 0: anything; 1: left of '<+' (no bare choice or mu); 2: unary slot
    if isinstance(s, Fail):
        return "fail"
    if isinstance(s, FixVar):
        return s.name
    if isinstance(s, Guard):
        return f"({s.pattern} ; {_fmt(s.body, 0, raw)})"
    if isinstance(s, GuardInsert):
        return f"({s.pattern} => {format_contexts(s.contexts)})"
    if isinstance(s, AtInsert):
        return f"@{format_position(s.position)}.{format_contexts(s.contexts)}"
    if isinstance(s, At):
        return f"@{format_position(s.position)}.{_fmt(s.body, 2, raw)}"
    if isinstance(s, GatedList):
        entries = s.entries if raw else sort_entries(s.entries)
        return "[" + ", ".join(_fmt(e, 2, raw) for e in entries) + " | " + format_formula(s.formula) + "]"
    if isinstance(s, Choice):
        out = f"{_fmt(s.left, 1, raw)} <+ {_fmt(s.right, 0, raw)}"
        return f"({out})" if prec else out
    if isinstance(s, Mu):
        out = f"mu {s.var} . {_fmt(s.body, 0, raw)}"
        return f"({out})" if prec else out
    raise StrategyError(f"not a strategy: {s!r}")
