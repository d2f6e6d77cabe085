"""Command line front end.

    qpd normalize EXPR
    qpd derive {dt,dt0,dx,dy,dz} EXPR
    qpd matrix {2,4} EXPR
    qpd verify SUITE [--alpha a0,a1,a2,a3] [--fixture FILE]
    qpd limit EXPR

``dt`` is the shifted t-derivative, ``dt0`` the plain one.  ``--json`` works
with every command.  Exit codes: 0 ok, 1 failed identity, 2 usage,
3 parse error, 4 pole or degenerate input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from qpd import qpdmap
from qpd.errors import ParseError, QPDError
from qpd.expr import evaluate, parse
from qpd.inversion import AlphaVector
from qpd.suites import SUITE_NAMES, Fixture, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3, 4


def _emit(args, text: str, payload: dict):
    if args.json:
        print(json.dumps(payload))
    else:
        print(text)


def _eval(src: str):
    return evaluate(parse(src))


def cmd_normalize(args) -> int:
    v = _eval(args.expr).canonical()
    _emit(args, str(v), {"input": args.expr, "normal_form": str(v)})
    return EXIT_OK


def cmd_derive(args) -> int:
    v = qpdmap.extract_qpd(args.name, _eval(args.expr)).canonical()
    _emit(args, str(v), {"derivative": args.name, "input": args.expr, "value": str(v)})
    return EXIT_OK


def cmd_matrix(args) -> int:
    a = _eval(args.expr)
    m = (qpdmap.dmat2 if args.size == 2 else qpdmap.hatt4)(a).canonical()
    _emit(args, m.pretty(), {"input": args.expr, "size": m.size, "entries": m.to_strings()})
    return EXIT_OK


def cmd_limit(args) -> int:
    v = _eval(args.expr).classical_limit()
    _emit(args, str(v), {"input": args.expr, "limit": str(v)})
    return EXIT_OK


def cmd_verify(args) -> int:
    fixture = Fixture.load(args.fixture) if args.fixture else None
    if fixture is not None and args.suite == "all":
        raise _Usage("--fixture needs a single suite")
    alphas = [AlphaVector.parse(args.alpha)] if args.alpha else []
    rep = run_suite(args.suite, fixture, alphas)
    if args.json:
        print(rep.to_json())
    else:
        print(rep.summary())
    return EXIT_OK if rep.passed else EXIT_FAIL


class _Usage(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qpd", description="Quantum partial derivatives on U(u(2)_h).")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="PBW normal form")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("derive", parents=[common], help="one derivative (dt is the shifted one)")
    s.add_argument("name", choices=("dt", "dt0", "dx", "dy", "dz"))
    s.add_argument("expr")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("matrix", parents=[common], help="the 2x2 or 4x4 derivative matrix")
    s.add_argument("size", type=int, choices=(2, 4))
    s.add_argument("expr")
    s.set_defaults(func=cmd_matrix)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=SUITE_NAMES)
    s.add_argument("--alpha", help="a0,a1,a2,a3 (rationals)")
    s.add_argument("--fixture", help="file of expected values replacing the built-in one")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("limit", parents=[common], help="value at hb = 0")
    s.add_argument("expr")
    s.set_defaults(func=cmd_limit)
    return p


def _error(args, kind: str, exc: Exception, code: int) -> int:
    payload = {"error": kind, "message": str(exc)}
    if isinstance(exc, ParseError):
        payload.update(line=exc.line, column=exc.column, expected=list(exc.expected))
    if getattr(args, "json", False):
        print(json.dumps(payload))
    else:
        print(f"qpd: {kind}: {exc}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        return _error(args, "parse error", exc, EXIT_PARSE)
    except (_Usage, ValueError) as exc:
        if isinstance(exc, QPDError):
            return _error(args, type(exc).__name__, exc, EXIT_DOMAIN)
        return _error(args, "usage", exc, EXIT_USAGE)
    except (QPDError, ZeroDivisionError) as exc:
        return _error(args, type(exc).__name__, exc, EXIT_DOMAIN)
    except OSError as exc:
        return _error(args, "usage", exc, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
