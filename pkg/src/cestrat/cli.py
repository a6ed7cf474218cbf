"""Command-line front end.

Exit codes: 0 success, 1 the strategy failed (or a law failed), 2 bad input.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .canonical import to_canonical
from .pce import FAIL, combine_pce, eq_pce, normalize_pce, unify_pce
from .psi import psi
from .strategy import StrategyError, apply_ce, check_strategy, one_left, top_down
from .syntax import ParseError, format_pce, format_strategy, parse_signature, parse_strategy, parse_term
from .terms import TermError
from .unify import combine_general, unify_general


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _parse(path: str, parser):
    try:
        return parser(_read(path))
    except ParseError as e:
        raise InputError(f"{path}:{e.line}:{e.col}: {e.msg}") from None


def _signature(args):
    return _parse(args.signature, parse_signature) if args.signature else None


def _strategy(path: str, args):
    s = _parse(path, parse_strategy)
    wrap = getattr(args, "wrap", None)
    if wrap:
        sig = _signature(args)
        if sig is None:
            raise InputError(f"--wrap {wrap} needs --signature")
        s = (top_down if wrap == "top-down" else one_left)(s, sig)
    try:
        return check_strategy(s)
    except StrategyError as e:
        raise InputError(f"{path}: {e}") from None


def _term(path: str, args):
    t = _parse(path, parse_term)
    sig = _signature(args)
    if sig is not None:
        try:
            sig.check(t)
        except TermError as e:
            raise InputError(f"{path}: {e}") from None
    return t


def _show_pce(e, raw: bool) -> str:
    return format_pce(e if raw else normalize_pce(e))


def cmd_apply(args) -> int:
    s, t = _strategy(args.strategy, args), _term(args.term, args)
    r = apply_ce(s, t)
    print("FAIL" if r is FAIL else r)
    return 1 if r is FAIL else 0


def cmd_psi(args) -> int:
    s, t = _strategy(args.strategy, args), _term(args.term, args)
    e = psi(s, t)
    print(_show_pce(e, args.raw))
    return 1 if e.failed else 0


def cmd_canon(args) -> int:
    s = _strategy(args.strategy, args)
    print(format_strategy(to_canonical(s), raw=args.raw))
    return 0


def _merge(args, op, op_pce) -> int:
    a, b = _strategy(args.left, args), _strategy(args.right, args)
    out = op(a, b)
    print(format_strategy(out, raw=args.raw))
    status = 0
    if args.term:
        t = _term(args.term, args)
        r = apply_ce(out, t)
        print("FAIL" if r is FAIL else r)
        status = 1 if r is FAIL else 0
    if args.check_equiv:
        sig = _signature(args)
        terms = (
            harness.signature_terms(sig, args.seed, args.max_depth)
            if sig
            else harness.default_terms(args.seed, args.max_depth)
        )
        ca, cb = to_canonical(a), to_canonical(b)
        for t in terms:
            want = op_pce(psi(ca, t), psi(cb, t))
            got = psi(out, t)
            if not eq_pce(got, want):
                print(f"# check-equiv: mismatch on {t}: {format_pce(got)} vs {format_pce(want)}", file=sys.stderr)
                return 1
        print(f"# check-equiv: agrees with the operands on {len(terms)} terms")
    return status


def cmd_unify(args) -> int:
    return _merge(args, unify_general, unify_pce)


def cmd_combine(args) -> int:
    return _merge(args, combine_general, combine_pce)


def cmd_check(args) -> int:
    if args.list:
        for law in harness.LAWS.values():
            print(f"{law.id:34} {law.kind:7} {law.about}")
        return 0
    ids = None if args.law == "all" else [args.law]
    if ids and ids[0] not in harness.LAWS:
        raise InputError(f"unknown law {args.law!r} (see check --list)")
    sig = _signature(args)
    if sig is not None:
        corpus = harness.signature_corpus(sig, args.seed, args.max_depth)
    else:
        corpus = harness.default_corpus(args.seed, args.max_depth)
    reports = harness.run(corpus, ids)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cestrat", description="context-embedding strategies")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--signature", help="signature file: one name/arity per line")
    common.add_argument("--raw", action="store_true", help="print without normalizing")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-depth", type=int, default=3)
    common.add_argument(
        "--wrap", choices=("top-down", "one-left"), help="wrap each strategy in a traversal"
    )
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("apply", parents=[common], help="apply a strategy to a term")
    a.add_argument("strategy")
    a.add_argument("term")
    a.set_defaults(fn=cmd_apply)

    a = sub.add_parser("psi", parents=[common], help="compile a strategy against a term")
    a.add_argument("strategy")
    a.add_argument("term")
    a.set_defaults(fn=cmd_psi)

    a = sub.add_parser("canon", parents=[common], help="print the canonical form")
    a.add_argument("strategy")
    a.set_defaults(fn=cmd_canon)

    for name, fn in (("unify", cmd_unify), ("combine", cmd_combine)):
        a = sub.add_parser(name, parents=[common], help=f"{name} two strategies")
        a.add_argument("left")
        a.add_argument("right")
        a.add_argument("term", nargs="?")
        a.add_argument("--check-equiv", action="store_true", help="cross-check against the compiled operands")
        a.set_defaults(fn=fn)

    a = sub.add_parser("check", parents=[common], help="run the law harness")
    a.add_argument("law", nargs="?", default="all")
    a.add_argument("--list", action="store_true", help="list the law catalog")
    a.set_defaults(fn=cmd_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (StrategyError, TermError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
