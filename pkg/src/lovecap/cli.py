"""Command-line front end: ``lovecap <command> [options]``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from itertools import zip_longest
from pathlib import Path

from mpmath import mpf

from . import acceptance, lieb_liniger, matching, nystrom, selector, small, tables
from .errors import LovecapError
from .special import DEFAULT_DIGITS, default_digits, working_precision


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _criteria_list(text: str) -> list[int]:
    try:
        numbers = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None
    unknown = [n for n in numbers if n not in acceptance.CRITERIA]
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown criteria {unknown}")
    return numbers


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lovecap",
        description="Capacitance of the circular-disk capacitor and related quantities.",
    )
    parser.add_argument("--digits", type=int, default=None,
                        help=f"working precision in decimal digits (default {DEFAULT_DIGITS} "
                             "or $LOVECAP_PRECISION)")
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("--method", choices=selector.METHODS, default="auto")
        p.add_argument("--order", type=int, default=small.MAX_ORDER, help="small-kappa series order (-1..7)")
        p.add_argument("--tolerance", type=float, default=nystrom.DEFAULT_TOLERANCE)

    p = sub.add_parser("capacitance", help="capacitance at one separation")
    p.add_argument("--kappa", type=float, help="gap-to-radius ratio")
    p.add_argument("--radius", type=float, help="plate radius in metres")
    p.add_argument("--gap", type=float, help="plate separation in metres")
    p.add_argument("--epsilon0", type=float, help="permittivity in F/m")
    solver_flags(p)

    def grid_flags(p, kmin, kmax, points):
        p.add_argument("--kmin", type=float, default=kmin)
        p.add_argument("--kmax", type=float, default=kmax)
        p.add_argument("--points", type=int, default=points)
        p.add_argument("--out", type=Path, default=None, help="CSV path (stdout if omitted)")

    p = sub.add_parser("table", help="tabulate the capacitance on a log-spaced grid")
    grid_flags(p, 0.01, 100.0, 41)
    solver_flags(p)

    p = sub.add_parser("fig1", help="capacitance by every valid method on a log-spaced grid")
    grid_flags(p, 0.05, 100.0, 60)
    p.add_argument("--tolerance", type=float, default=nystrom.DEFAULT_TOLERANCE)

    p = sub.add_parser("derive-coeffs", help="run the matching recursion and compare with the stored series")
    p.add_argument("--order", "-P", dest="order", type=_positive_int, default=small.MAX_ORDER)
    p.add_argument("--out", type=Path, default=None, help="JSON path (stdout if omitted)")

    p = sub.add_parser("lieb-liniger", help="Lieb-Liniger ground-state energy e(gamma)")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--method", choices=lieb_liniger.METHODS, default="nystrom")
    p.add_argument("--tolerance", type=float, default=nystrom.DEFAULT_TOLERANCE)

    p = sub.add_parser("check", help="run the acceptance checks")
    p.add_argument("--criteria", type=_criteria_list, default=None, help="comma-separated subset, e.g. 1,4,7")
    return parser


def _emit_csv(out, header, rows):
    if out is None:
        print(",".join(header))
        for row in rows:
            print(",".join(tables.format_value(v) for v in row))
    else:
        tables.write_csv(out, header, rows)
        print(f"wrote {len(rows)} rows to {out}")


def cmd_capacitance(args) -> int:
    kwargs = dict(method=args.method, order=args.order, tolerance=args.tolerance)
    physical = [args.radius, args.gap, args.epsilon0]
    if any(v is not None for v in physical):
        if None in physical or args.kappa is not None:
            print("error: give all of --radius, --gap, --epsilon0 (and no --kappa)", file=sys.stderr)
            return 2
        farads, result = selector.physical_capacitance(args.radius, args.gap, args.epsilon0, **kwargs)
    elif args.kappa is None:
        print("error: --kappa is required", file=sys.stderr)
        return 2
    else:
        farads, result = None, selector.capacitance(args.kappa, **kwargs)
    print(f"kappa          {result.kappa:.12g}")
    print(f"C              {result.value:.15g}")
    print(f"method         {result.label}")
    print(f"error_estimate {result.error_estimate:.3g}")
    if farads is not None:
        print(f"capacitance_F  {farads:.12g}")
    return 0


def cmd_table(args) -> int:
    rows = tables.table_rows(args.kmin, args.kmax, args.points, args.method, args.order, args.tolerance)
    _emit_csv(args.out, ("kappa", "C", "method", "error_estimate"), rows)
    return 0


def cmd_fig1(args) -> int:
    rows = tables.fig1_rows(args.kmin, args.kmax, args.points, args.tolerance)
    _emit_csv(args.out, tables.FIG1_HEADER, rows)
    return 0


def cmd_derive_coeffs(args) -> int:
    digits = default_digits() if args.digits is None else args.digits
    table = matching.run_matching(args.order, digits)
    doc = json.dumps(matching.table_to_json(table), indent=1)
    if args.out is None:
        print(doc)
    else:
        args.out.write_text(doc + "\n", encoding="utf-8")
        print(f"wrote coefficient table to {args.out}")
    derived = matching.capacitance_series_from_table(table)
    builtin = small.builtin_coefficients(digits)
    worst = 0.0
    print(f"{'j':>3}  {'max |b_j| coeff':>16}  {'relative deviation':>18}")
    with working_precision(digits):
        for j in range(-1, args.order + 1):
            ref = builtin.coeffs[j]
            scale = max(ref.max_abs(), mpf(10) ** -digits)
            rel = float((derived.coeffs[j] - ref).max_abs() / scale)
            worst = max(worst, rel)
            print(f"{j:>3}  {float(ref.max_abs()):>16.10g}  {rel:>18.2e}")
            pairs = zip_longest(derived.coeffs[j].to_strings(20), ref.to_strings(20), fillvalue="0")
            for power, (a, b) in enumerate(pairs):
                print(f"       L^{power}: engine {a}  stored {b}")
    print(f"max relative deviation {worst:.2e}")
    return 0


def cmd_lieb_liniger(args) -> int:
    point = lieb_liniger.lieb_liniger_point(args.gamma, args.method, args.tolerance)
    print(f"gamma   {point.gamma:.12g}")
    print(f"kappa   {point.kappa:.15g}")
    print(f"e       {point.energy:.15g}")
    print(f"backend {point.method}")
    for other in lieb_liniger.METHODS:
        if other == args.method:
            continue
        lo, hi = lieb_liniger.METHOD_RANGES[other]
        if lo < point.kappa <= hi:
            e_other = lieb_liniger.ground_state_energy(args.gamma, other, args.tolerance)
            print(f"e[{other}] {e_other:.15g}  difference {abs(e_other - point.energy):.2e}")
    return 0


def cmd_check(args) -> int:
    results = acceptance.run_all(args.criteria, report=lambda line: print(line, flush=True))
    failed = [r for r in results if not r.passed]
    if failed:
        print("failed: " + ", ".join(f"criterion {r.number} ({r.name})" for r in failed))
        return 1
    print(f"all {len(results)} criteria passed")
    return 0


COMMANDS = {
    "capacitance": cmd_capacitance,
    "table": cmd_table,
    "fig1": cmd_fig1,
    "derive-coeffs": cmd_derive_coeffs,
    "lieb-liniger": cmd_lieb_liniger,
    "check": cmd_check,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.digits is not None:
        if args.digits < 15:
            print("error: --digits must be >= 15", file=sys.stderr)
            return 2
    saved = os.environ.get("LOVECAP_PRECISION")
    if args.digits is not None:
        os.environ["LOVECAP_PRECISION"] = str(args.digits)
    try:
        return COMMANDS[args.command](args)
    except (LovecapError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        if saved is None:
            os.environ.pop("LOVECAP_PRECISION", None)
        else:
            os.environ["LOVECAP_PRECISION"] = saved


if __name__ == "__main__":
    sys.exit(main())
