"""Command-line interface.

Usage:
    diffconj decide F.spec G.spec [--h1 EXPR]
    diffconj series compose|invert|power|conjugate|sqrt|linearize|deviation LITERAL... [--mu MU]
    diffconj jet EXPR POINT ORDER
    diffconj verify F G H
    diffconj selftest [--suite NAME] [--cases N]

Exit codes: 0 conjugate / pass, 1 not conjugate / fail, 2 undetermined,
10 usage or parse error, 11 invalid input, 12 mathematical error, 13 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import mpmath

from . import _kernels as K
from .diffeo import SpecError, load_spec
from .dynamics import ResonantMultiplier, comp_square_root, koenigs_linearize
from .engine import CONJUGATE, NOT_CONJUGATE, ConjugacyError, full_group_decide
from .expr import DomainError, ExprError, ExprSyntaxError, parse_expression
from .jets import taylor_jet
from .series import (
    DEFAULT_ORDER,
    SeriesError,
    TruncatedSeries,
    comp_inverse,
    comp_power,
    compose,
    conjugate,
    deviation_index,
    format_literal,
    parse_literal,
)
from .suites import SUITES, run_suite
from .verify import check_conjugacy_numeric

EXIT_CONJUGATE = 0
EXIT_NOT_CONJUGATE = 1
EXIT_UNDETERMINED = 2
EXIT_USAGE = 10
EXIT_INVALID = 11
EXIT_MATH = 12
EXIT_IO = 13

MIN_ORDER = 4
MIN_PRECISION = 30
SERIES_OPS = ("compose", "invert", "power", "conjugate", "sqrt", "linearize", "deviation")
SERIES_ARITY = {"compose": 2, "invert": 1, "power": 2, "conjugate": 2, "sqrt": 1, "linearize": 1, "deviation": 1}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--order", type=int, help=f"truncation order N (default {DEFAULT_ORDER})")
    p.add_argument("--precision", type=int, default=K.DEFAULT_PRECISION, help="working decimal digits")
    p.add_argument("--interval", nargs=2, type=_rational, metavar=("A", "B"), default=[Fraction(-2), Fraction(2)])
    p.add_argument("--points", type=int, default=1001, help="grid points for numeric checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", choices=("text", "structured"), default="text")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="diffconj", description="Conjugacy of diffeomorphisms of the line.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("decide", parents=[common], help="decide whether two specs are conjugate")
    p.add_argument("f", help="spec file of the first map")
    p.add_argument("g", help="spec file of the second map")
    p.add_argument("--h1", help="orientation-preserving h1 with h1^-1 o g^2 o h1 = f^2")

    p = sub.add_parser("series", parents=[common], help="operations on truncated series")
    p.add_argument("op", choices=SERIES_OPS)
    p.add_argument("operands", nargs="+", help="series literals [c1, c2, ...]; power takes an integer k")
    p.add_argument("--mu", type=_rational, help="root multiplier for sqrt")

    p = sub.add_parser("jet", parents=[common], help="Taylor jet of an expression at a point")
    p.add_argument("expr")
    p.add_argument("point", type=_rational)
    p.add_argument("jet_order", type=int, metavar="ORDER")

    p = sub.add_parser("verify", parents=[common], help="grid check of h o f = g o h")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("h")

    p = sub.add_parser("selftest", parents=[common], help="run the randomized suites")
    p.add_argument("--suite", choices=tuple(SUITES), action="append")
    p.add_argument("--cases", type=int)
    return parser


def _check_flags(args) -> None:
    if args.precision < MIN_PRECISION:
        raise UsageError(f"--precision must be at least {MIN_PRECISION}")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    if not args.interval[0] < args.interval[1]:
        raise UsageError("--interval needs A < B")
    if args.order is not None:
        # series and jet accept any positive order; decisions need room for the square
        minimum = 1 if args.command in ("series", "jet") else MIN_ORDER
        if args.order < minimum:
            raise UsageError(f"--order must be at least {minimum}")


def _header(args, order) -> dict:
    a, b = args.interval
    return {
        "order": order,
        "precision": args.precision,
        "interval": [str(a), str(b)],
        "points": args.points,
        "seed": args.seed,
    }


def _emit(args, order, body: dict, lines: list) -> None:
    header = _header(args, order)
    if args.report == "structured":
        print(json.dumps({"header": header, **body}, indent=2, sort_keys=True))
        return
    a, b = header["interval"]
    print(
        f"# diffconj {args.command}: order={order} precision={args.precision} "
        f"interval=[{a}, {b}] points={args.points} seed={args.seed}"
    )
    for line in lines:
        print(line)


# -- subcommands --------------------------------------------------------------


def cmd_decide(args) -> int:
    f, g = load_spec(args.f), load_spec(args.g)
    h1 = parse_expression(args.h1) if args.h1 else None
    order = args.order or max(f.order, g.order)
    verdict = full_group_decide(
        f, g, h1=h1, order=order, precision=args.precision, interval=tuple(args.interval), points=args.points
    )
    lines = [f"status: {verdict.status}", f"case: {verdict.case_tag}"]
    if verdict.branch:
        lines.append(f"branch: {verdict.branch}")
    if verdict.certificate is not None:
        lines.append(f"certificate: {verdict.certificate.text()}")
        for name, e in verdict.certificate.parts:
            lines.append(f"  {name}: {e.text()}")
    for key, value in verdict.to_dict()["residuals"].items():
        if isinstance(value, dict):
            value = (
                f"max {value['max_residual']} at x = {value['argmax']} over {value['points']} points "
                f"(tolerance {value['tolerance']}, {'pass' if value['pass'] else 'fail'})"
            )
        lines.append(f"{key} residual: {value}")
    for note in verdict.notes:
        lines.append(f"note: {note}")
    _emit(args, order, {"verdict": verdict.to_dict()}, lines)
    if verdict.status == CONJUGATE:
        return EXIT_CONJUGATE
    if verdict.status == NOT_CONJUGATE:
        return EXIT_NOT_CONJUGATE
    return EXIT_UNDETERMINED


def _literal(text: str) -> list:
    try:
        return parse_literal(text)
    except SeriesError as exc:
        raise UsageError(str(exc)) from None


def cmd_series(args) -> int:
    op, operands = args.op, list(args.operands)
    if len(operands) != SERIES_ARITY[op]:
        raise UsageError(f"series {op} takes {SERIES_ARITY[op]} operand(s), got {len(operands)}")
    k = None
    if op == "power":
        try:
            k = int(operands.pop())
        except ValueError:
            raise UsageError("series power needs an integer exponent") from None
    coeffs = [_literal(t) for t in operands]
    order = args.order or max(len(c) for c in coeffs)
    S = [TruncatedSeries(c, order) for c in coeffs]
    body: dict = {"op": op, "inputs": [s.to_literal() for s in S]}
    if op == "sqrt":
        if args.mu is None:
            raise UsageError("series sqrt needs --mu")
        family = comp_square_root(S[0], args.mu)
        witness = family.witness.to_literal() if family.witness is not None else None
        body.update(
            kind=family.kind,
            labels=list(family.labels),
            free_indices=list(family.free_indices),
            witness=witness,
        )
        lines = [
            f"kind: {family.kind}",
            f"free indices: {', '.join(map(str, family.free_indices)) or 'none'}",
            f"labels: {', '.join(f'{n}={lab}' for n, lab in enumerate(family.labels, start=2))}",
            f"witness: {witness}",
        ]
        _emit(args, order, body, lines)
        return 0
    if op == "deviation":
        dev = deviation_index(S[0])
        body["result"] = dev
        _emit(args, order, body, [f"deviation: {dev if dev is not None else 'none'}"])
        return 0
    if op == "compose":
        result = compose(S[0], S[1])
    elif op == "invert":
        result = comp_inverse(S[0])
    elif op == "power":
        result = comp_power(S[0], k)
    elif op == "conjugate":
        result = conjugate(S[0], S[1])
    else:
        result = koenigs_linearize(S[0])
    body["result"] = result.to_literal()
    _emit(args, order, body, [result.to_literal()])
    return 0


def cmd_jet(args) -> int:
    if args.jet_order < 1:
        raise UsageError("jet order must be positive")
    with mpmath.workdps(args.precision):
        jet = taylor_jet(parse_expression(args.expr), args.point, args.jet_order)
        literal = format_literal(jet.coeffs)
    _emit(args, args.jet_order, {"expr": args.expr, "point": str(args.point), "jet": literal}, [literal])
    return 0


def cmd_verify(args) -> int:
    f, g, h = (parse_expression(t) for t in (args.f, args.g, args.h))
    with mpmath.workdps(args.precision):
        report = check_conjugacy_numeric(f, g, h, tuple(args.interval), args.points)
        summary = report.to_dict()
    lines = [
        f"max residual: {summary['max_residual']} at x = {summary['argmax']}",
        f"tolerance: {summary['tolerance']}",
        f"result: {'PASS' if report.passed else 'FAIL'}",
    ]
    _emit(args, args.order or DEFAULT_ORDER, {"check": summary}, lines)
    return 0 if report.passed else 1


def cmd_selftest(args) -> int:
    names = args.suite or list(SUITES)
    results = [run_suite(name, args.seed, args.cases) for name in names]
    lines = [r.line() for r in results]
    for r in results:
        lines.extend(f"  {msg}" for msg in r.failures[:5])
    ok = all(r.passed for r in results)
    lines.append(f"overall: {'PASS' if ok else 'FAIL'}")
    _emit(args, args.order or DEFAULT_ORDER, {"suites": [r.to_dict() for r in results], "pass": ok}, lines)
    return 0 if ok else 1


COMMANDS = {
    "decide": cmd_decide,
    "series": cmd_series,
    "jet": cmd_jet,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _check_flags(args)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"diffconj: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExprSyntaxError as exc:
        print(f"diffconj: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpecError as exc:
        print(f"diffconj: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (DomainError, ResonantMultiplier, ConjugacyError, SeriesError, ExprError, ZeroDivisionError) as exc:
        print(f"diffconj: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except OSError as exc:
        print(f"diffconj: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
