"""Command-line interface: ``absorbing <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 uncertified limit (or a
failing ``verify``).
"""
from __future__ import annotations

import argparse
import csv
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path

from .errors import DomainError
from .exactalg import AlgebraicNumber, to_decimal
from .gamefile import GameFileError, parse_game_file, parse_rational, serialize
from .model import BUILTIN_NAMES, QuadraticTarget, builtin, represent_quadratic
from .simulate import estimate_gamma
from .solver import (
    DEFAULT_SCHEDULE,
    DEFAULT_TOL,
    DEFAULT_WIDTH,
    discounted_optimal,
    discounted_payoff,
    discounted_value,
    limit_value,
    stationary_guarantee,
)

DIGITS = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _exact(text: str) -> Fraction:
    """Rational from 'p/q', an integer, or a decimal such as 1e-7 (parameters, not game data)."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(parse_rational(part) for part in text.split(","))
    except GameFileError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _lambdas(text: str) -> list[Fraction]:
    """'1e-1..1e-7' (decades) or a comma list; returned sorted by decreasing lam."""
    m = re.fullmatch(r"\s*1e-(\d+)\s*\.\.\s*1e-(\d+)\s*", text)
    if m:
        a, b = sorted(int(e) for e in m.groups())
        vals = [Fraction(1, 10**e) for e in range(a, b + 1)]
    else:
        vals = [_exact(part) for part in text.split(",")]
    return sorted(set(vals), reverse=True)


def _dec(x: Fraction, digits: int = DIGITS) -> str:
    return str(to_decimal(x, digits))


def load_game(spec: str, k: int | None = None):
    """A built-in name (``sqrt-k:4`` or ``sqrt-k`` with k) or a path to a JSON game file."""
    name, _, suffix = spec.partition(":")
    if name in BUILTIN_NAMES:
        if suffix:
            k = int(suffix)
        return builtin(name, k)
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"no such game file or built-in: {spec}")
    return parse_game_file(path.read_text(encoding="utf-8"))


def _fmt_strategy(s) -> str:
    return "(" + ", ".join(str(p) for p in s) + ")"


def cmd_solve(args, out) -> int:
    game = load_game(args.game, args.k)
    lo, hi = discounted_value(game, args.lam, args.width)
    x, y = discounted_optimal(game, args.lam, args.width)
    print(f"lambda = {args.lam}", file=out)
    print(f"v_lambda in [{lo}, {hi}]", file=out)
    print(f"  ~ [{_dec(lo)}, {_dec(hi)}] ({DIGITS} significant digits)", file=out)
    print(f"player 1 strategy: {_fmt_strategy(x)}", file=out)
    print(f"player 2 strategy: {_fmt_strategy(y)}", file=out)
    return 0


def report_limit(res, out) -> None:
    if res.value is None:
        print("value: none found", file=out)
    elif isinstance(res.value, Fraction):
        print(f"value: {res.value} (rational)", file=out)
    else:
        alg: AlgebraicNumber = res.value
        tight = alg.refined(Fraction(1, 10**12))
        print(f"value ~ {alg.decimal(DIGITS)} ({DIGITS} significant digits)", file=out)
        cert = "certified minimal" if alg.minimality_certified else "minimality not certified"
        print(f"  root of {alg.poly} (degree {alg.degree}, {cert})", file=out)
        print(f"  isolating interval [{tight.lo}, {tight.hi}]", file=out)
    print("candidates:", file=out)
    for c in res.candidates:
        kernels = " ".join(f"{tuple(i + 1 for i in r)}x{tuple(j + 1 for j in s)}" for r, s in c.kernels)
        print(f"  {c.poly}    from {kernels}", file=out)
    print("lambda trace:", file=out)
    for (lam, (lo, hi)), d in zip(res.lambda_trace, res.distances or [None] * len(res.lambda_trace)):
        dist = f"  distance {float(d):.3e}" if d is not None else ""
        print(f"  {float(lam):.0e}  [{_dec(lo)}, {_dec(hi)}]{dist}", file=out)
    status = "certified" if res.certified else f"NOT certified: {res.reason}"
    print(f"status: {status}", file=out)


def cmd_limit(args, out) -> int:
    game = load_game(args.game, args.k)
    res = limit_value(game, args.tol)
    report_limit(res, out)
    return 0 if res.certified else 2


def cmd_guarantee(args, out) -> int:
    game = load_game(args.game, args.k)
    g = stationary_guarantee(game, args.player, args.width)
    print(f"player {args.player} stationary guarantee in [{g.lo}, {g.hi}]", file=out)
    print(f"  ~ [{_dec(g.lo)}, {_dec(g.hi)}] ({DIGITS} significant digits)", file=out)
    print(f"support: {tuple(i + 1 for i in g.support)}", file=out)
    print(f"strategy: {_fmt_strategy(g.strategy)}", file=out)
    print(f"  ~ ({', '.join(_dec(p, 8) for p in g.strategy)})", file=out)
    return 0


def cmd_sweep(args, out) -> int:
    game = load_game(args.game, args.k)
    rows = [(lam, *discounted_value(game, lam, args.width)) for lam in args.lambdas]
    handle = out if args.csv in (None, "-") else open(args.csv, "w", newline="", encoding="utf-8")
    try:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["lambda", "v_lo", "v_hi", "v_lo_exact", "v_hi_exact"])
        for lam, lo, hi in rows:
            writer.writerow([_dec(lam), _dec(lo), _dec(hi), str(lo), str(hi)])
    finally:
        if handle is not out:
            handle.close()
    return 0


def cmd_simulate(args, out) -> int:
    game = load_game(args.game, args.k)
    mean, se = estimate_gamma(game, args.x, args.y, args.lam, args.n, args.seed)
    exact = discounted_payoff(game, args.lam, args.x, args.y)
    print(f"mean {mean:.10g}  stderr {se:.3g}  (N = {args.n}, seed {args.seed})", file=out)
    print(f"exact gamma_lambda = {exact} ~ {_dec(exact)}", file=out)
    return 0


def cmd_example(args, out) -> int:
    game = builtin(args.name, args.k)
    text = serialize(game)
    if args.emit:
        Path(args.emit).write_text(text + "\n", encoding="utf-8")
    else:
        print(text, file=out)
    return 0


def cmd_represent(args, out) -> int:
    game = represent_quadratic(QuadraticTarget(args.p, args.q, args.k))
    print(f"game: {serialize(game)}", file=out)
    res = limit_value(game, args.tol)
    report_limit(res, out)
    return 0 if res.certified else 2


def cmd_verify(args, out) -> int:
    from .verify import run_all

    report = run_all(args.scale, progress=lambda c: print(c.line(), file=out, flush=True))
    n_ok = sum(c.passed for c in report.checks)
    print(f"{n_ok}/{len(report.checks)} checks passed", file=out)
    return 0 if report.passed else 2


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="absorbing", description="Discounted and limit values of absorbing games.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def game_args(sp):
        sp.add_argument("--game", required=True, help="JSON game file or built-in name (sqrt-k:K allowed)")
        sp.add_argument("--k", type=int, help="k for the sqrt-k built-in")

    sp = sub.add_parser("solve", help="discounted value and optimal stationary strategies")
    game_args(sp)
    sp.add_argument("--lambda", dest="lam", type=_exact, required=True)
    sp.add_argument("--width", type=_exact, default=DEFAULT_WIDTH)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("limit", help="certified limit value")
    game_args(sp)
    sp.add_argument("--tol", type=_exact, default=DEFAULT_TOL)
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("guarantee", help="best stationary limit guarantee of one player")
    game_args(sp)
    sp.add_argument("--player", type=int, choices=(1, 2), default=1)
    sp.add_argument("--width", type=_exact, default=DEFAULT_WIDTH)
    sp.set_defaults(func=cmd_guarantee)

    sp = sub.add_parser("sweep", help="discounted values over a lambda grid, as CSV")
    game_args(sp)
    sp.add_argument("--lambdas", type=_lambdas, default=list(DEFAULT_SCHEDULE),
                    help="'1e-1..1e-7' or comma-separated rationals")
    sp.add_argument("--width", type=_exact, default=DEFAULT_WIDTH)
    sp.add_argument("--csv", help="output path ('-' or omitted for stdout)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("simulate", help="Monte Carlo estimate of gamma_lambda(x, y)")
    game_args(sp)
    sp.add_argument("--x", type=_vector, required=True, help="row strategy, e.g. 1/11,10/11")
    sp.add_argument("--y", type=_vector, required=True, help="column strategy")
    sp.add_argument("--lambda", dest="lam", type=_exact, required=True)
    sp.add_argument("-n", type=int, default=100_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("example", help="emit a built-in game as JSON")
    sp.add_argument("name", choices=BUILTIN_NAMES)
    sp.add_argument("--k", type=int)
    sp.add_argument("--emit", help="write to this file instead of stdout")
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("represent", help="game with limit value p + q sqrt(k)")
    sp.add_argument("--p", type=_exact, required=True)
    sp.add_argument("--q", type=_exact, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--tol", type=_exact, default=DEFAULT_TOL)
    sp.set_defaults(func=cmd_represent)

    sp = sub.add_parser("verify", help="run the acceptance checks")
    sp.add_argument("--scale", type=float, default=1.0, help="shrink random suites (e.g. 0.1)")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except (UsageError, GameFileError, DomainError, ValueError) as exc:
        print(f"absorbing: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
