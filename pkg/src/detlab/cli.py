"""Command-line harness: ``detlab <subcommand> ...``.

Exit status: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import cover as cov
from .exact import rational_str, s_count_and_sum
from .experiments import (fit_exponent, parse_grid, run_series, series_from_csv,
                          series_to_csv, count_points)
from .jarnik import (JARNIK_CONSTANT, collinearity_window_check, jarnik_upper_check,
                     mu_lower_bound)
from .parsing import CurveSyntaxError, format_curve, parse_curve
from .svg import loglog_svg


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, sort_keys=False))
    else:
        for line in lines:
            print(line)


def _curve(spec: str):
    try:
        return parse_curve(spec)
    except CurveSyntaxError as exc:
        raise UsageError(str(exc)) from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def cmd_sx(args) -> int:
    X = args.x_max
    count, sum_x = s_count_and_sum(X)
    count_ratio = count * math.pi ** 2 / (3 * X ** 2)
    sum_ratio = sum_x * math.pi ** 2 / X ** 3
    _emit(args, {"x_max": X, "count": count, "sum_x": sum_x,
                 "count_ratio": count_ratio, "sum_ratio": sum_ratio},
          [f"count {count}", f"sum_x {sum_x}",
           f"count*pi^2/(3X^2) {count_ratio:.6f}", f"sum_x*pi^2/X^3 {sum_ratio:.6f}"])
    return 0


def cmd_count(args) -> int:
    c = _curve(args.curve)
    rows = [(N, count_points(c, N, args.mode)) for N in args.n]
    _emit(args, {"curve": format_curve(c), "mode": args.mode,
                 "counts": [{"n": N, "count": k} for N, k in rows]},
          [f"{N} {k}" for N, k in rows])
    return 0


def cmd_series(args) -> int:
    c = _curve(args.curve)
    try:
        grid = parse_grid(args.grid)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    s = run_series(c, args.mode, grid)
    text = series_to_csv(s)
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    if args.json:
        print(json.dumps({"curve": format_curve(c), "mode": args.mode,
                          "samples": [{"n": n, "count": k} for n, k in s.samples]}))
    elif not args.out or args.out == "-":
        sys.stdout.write(text)
    return 0


def _read_series(path):
    with open(path) as fh:
        return series_from_csv(fh.read())


def cmd_fit(args) -> int:
    fit = fit_exponent(_read_series(args.input))
    _emit(args, {"slope": fit.slope, "intercept": fit.intercept, "r_squared": fit.r_squared},
          [f"slope {fit.slope:.6f}", f"intercept {fit.intercept:.6f}",
           f"r_squared {fit.r_squared:.6f}"])
    return 0


def cmd_plot(args) -> int:
    s = _read_series(args.input)
    slope = intercept = None
    if len(s.samples) >= 3 and min(s.counts) >= 1:
        fit = fit_exponent(s)
        slope, intercept = fit.slope, fit.intercept
    with open(args.out, "w") as fh:
        fh.write(loglog_svg(s.ns, s.counts, slope, intercept, title=args.title or ""))
    _emit(args, {"out": args.out, "slope": slope}, [f"wrote {args.out}"])
    return 0


def cmd_cover(args) -> int:
    c = _curve(args.curve)
    cert = cov.build_cover(c, args.n, args.d, args.e, args.mode, args.pieces)
    if args.out:
        cov.dump_certificate(cert, args.out)
    ok = cov.verify_cover(cert)
    meta = dict(cert.meta, pieces=cert.piece_count, verified=ok)
    _emit(args, meta, [f"pieces {cert.piece_count}",
                       f"initial_pieces {cert.meta['initial_pieces']}",
                       f"bisections {cert.meta['bisections']}",
                       f"max_depth {cert.meta['max_depth']}",
                       f"verified {ok}"])
    return 0 if ok else 1


def cmd_verify(args) -> int:
    try:
        cert = cov.load_certificate(args.cert)
    except (OSError, ValueError) as exc:
        report = cov.VerifyReport(False, [f"cannot load certificate: {exc}"])
    else:
        report = cov.verify_report(cert)
    _emit(args, {"ok": report.ok, "errors": report.errors},
          ["ok" if report.ok else "FAILED"] + report.errors)
    return 0 if report.ok else 1


def cmd_jarnik(args) -> int:
    N = args.n
    mu = mu_lower_bound(N)
    ratio = mu / N ** (2 / 3)
    upper = jarnik_upper_check(N, args.slack)
    payload = {"n": N, "mu_lower_bound": mu, "ratio": ratio,
               "constant": JARNIK_CONSTANT, "upper_check": upper}
    lines = [f"mu_lower_bound {mu}", f"ratio {ratio:.6f}",
             f"3*pi^(-2/3) {JARNIK_CONSTANT:.6f}",
             f"upper_check(slack={rational_str(args.slack)}) {upper}"]
    status = 0 if upper else 1
    if args.window is not None:
        c = _curve(args.curve)
        bad = collinearity_window_check(c, N, args.window)
        payload["window"] = rational_str(args.window)
        payload["violations"] = [[[rational_str(p.x), rational_str(p.y)] for p in t] for t in bad]
        lines.append(f"window {rational_str(args.window)} violations {len(bad)}")
    _emit(args, payload, lines)
    return status


def cmd_exponent(args) -> int:
    try:
        delta = cov.delta_exponent(args.d, args.e, args.mode)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, {"d": args.d, "e": args.e, "mode": args.mode, "delta": rational_str(delta)},
          [rational_str(delta)])
    return 0


def cmd_choose(args) -> int:
    try:
        d, e = cov.choose_degrees(args.target, args.mode, args.d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    delta = cov.delta_exponent(d, e, args.mode)
    _emit(args, {"d": d, "e": e, "delta": rational_str(delta)},
          [f"d {d}", f"e {e}", f"delta {rational_str(delta)}"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="detlab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    def mode(sp):
        sp.add_argument("--mode", choices=cov.MODES, default="lattice")

    sp = add("sx", cmd_sx, "count and x-sum of primitive vectors S_X")
    sp.add_argument("--x-max", type=int, required=True)

    sp = add("count", cmd_count, "exact point counts for one or more N")
    sp.add_argument("--curve", required=True)
    mode(sp)
    sp.add_argument("--n", type=int, nargs="+", required=True)

    sp = add("series", cmd_series, "count series over a geometric N grid, as CSV")
    sp.add_argument("--curve", required=True)
    mode(sp)
    sp.add_argument("--grid", required=True, help="a:b:factor or n1,n2,...")
    sp.add_argument("--out", help="CSV path (default stdout)")

    sp = add("fit", cmd_fit, "log-log least-squares exponent of a CSV series")
    sp.add_argument("--in", dest="input", required=True)

    sp = add("cover", cmd_cover, "build a covering certificate")
    sp.add_argument("--curve", required=True)
    mode(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    sp.add_argument("--pieces", type=int, default=None)
    sp.add_argument("--out")

    sp = add("verify", cmd_verify, "independently verify a certificate")
    sp.add_argument("--cert", required=True)

    sp = add("jarnik", cmd_jarnik, "extremal chain size and collinearity windows")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--window", type=_fraction, default=None)
    sp.add_argument("--slack", type=_fraction, default=Fraction(1, 10))
    sp.add_argument("--curve", default="poly:0,0,1@[0,1]")

    sp = add("exponent", cmd_exponent, "covering exponent delta(d, e)")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--e", type=int, required=True)
    mode(sp)

    sp = add("choose", cmd_choose, "smallest degrees with delta below a target")
    sp.add_argument("--target", type=_fraction, required=True)
    mode(sp)
    sp.add_argument("--d", type=int, default=None)

    sp = add("plot", cmd_plot, "log-log SVG plot of a CSV series")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--title", default="")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"detlab: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"detlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
