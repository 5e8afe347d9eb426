"""Command line front end.

Exit status: 0 on success, 1 when the mathematics fails (a counterexample, a
mismatch, or an input that is not a Hilbert series), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from . import audit as aud
from .catalog import (
    PowerIdealParams,
    SyzygyParams,
    power_ideal_series,
    syzygy_hilbert_closed,
    syzygy_hilbert_left,
    syzygy_hilbert_right,
)
from .depth import (
    InternalInconsistency,
    NotAHilbertSeries,
    decompose,
    hilbert_depth,
    verify_decomposition,
)
from .power import power_hdepth_formula
from .series import LaurentPolynomial, RationalSeries, expand

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_polynomial(text: str) -> LaurentPolynomial:
    text = text.strip()
    if text.startswith("{"):
        return LaurentPolynomial.from_json(text)
    return LaurentPolynomial.from_text(text)


def _parse_assignments(tokens: Sequence[str], names: Sequence[str]) -> dict[str, int]:
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep or key not in names:
            raise UsageError(f"expected {'/'.join(n + '=<int>' for n in names)}, got {tok!r}")
        try:
            out[key] = int(value)
        except ValueError:
            raise UsageError(f"{key} must be an integer, got {value!r}") from None
    missing = [n for n in names if n not in out]
    if missing:
        raise UsageError(f"missing {', '.join(missing)}")
    return out


def _series_from_args(args) -> RationalSeries:
    if args.power is not None:
        vals = _parse_assignments(args.power, ("n", "s"))
        try:
            return power_ideal_series(PowerIdealParams(vals["n"], vals["s"]))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.numerator is None or args.n is None:
        raise UsageError("give either --power n=<int> s=<int> or --numerator POLY --n <int>")
    if args.n < 0:
        raise UsageError("--n must be nonnegative")
    try:
        return RationalSeries(parse_polynomial(args.numerator), args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _write_rows(header: Sequence[str], rows: list[Sequence], fmt: str, out) -> None:
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    elif fmt == "json":
        json.dump([dict(zip(header, map(_json_cell, row))) for row in rows], out, indent=2)
        out.write("\n")
    else:
        widths = [max(len(str(h)), *(len(str(r[i])) for r in rows)) for i, h in enumerate(header)]
        out.write("  ".join(str(h).rjust(w) for h, w in zip(header, widths)) + "\n")
        for row in rows:
            out.write("  ".join(str(c).rjust(w) for c, w in zip(row, widths)) + "\n")


def _json_cell(value):
    if isinstance(value, int) and not isinstance(value, bool) and abs(value) >= 2**53:
        return str(value)
    return value


def cmd_hdepth(args, out) -> int:
    rs = _series_from_args(args)
    report = hilbert_depth(rs, with_decomposition=args.decompose)
    if args.format == "json":
        json.dump(report.to_json(), out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        _write_rows(
            ("hdepth", "certificate_at_d", "certificate_above_d"),
            [(report.hdepth, report.certificate_at_d, report.certificate_above_d or "")],
            "csv",
            out,
        )
    else:
        n = rs.denom_exponent
        out.write(f"H(T) = ({rs.numerator}) / (1-T)^{n}\n")
        out.write(f"hdepth = {report.hdepth}\n")
        out.write(f"  Q/(1-T)^{n - report.hdepth}: {report.certificate_at_d}\n")
        if report.certificate_above_d is not None:
            out.write(f"  Q/(1-T)^{n - report.hdepth - 1}: {report.certificate_above_d}\n")
        if report.decomposition is not None:
            for e, q in report.decomposition.parts:
                out.write(f"  level {e}: {q}\n")
    return EXIT_OK


def cmd_decompose(args, out) -> int:
    rs = _series_from_args(args)
    dec = decompose(rs)
    if not verify_decomposition(dec, rs):
        raise InternalInconsistency("decomposition failed verification")
    if args.format == "json":
        json.dump(dec.to_json(), out, indent=2)
        out.write("\n")
    else:
        rows = [(e, q.to_text()) for e, q in dec.parts]
        _write_rows(("level", "numerator"), rows, args.format, out)
    return EXIT_OK


def cmd_expand(args, out) -> int:
    if args.numerator is None or args.n is None:
        raise UsageError("expand needs --numerator POLY and --n <int>")
    try:
        rs = RationalSeries(parse_polynomial(args.numerator), args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not rs.numerator.is_zero and args.max < rs.numerator.offset:
        raise UsageError("--max is below the numerator's lowest degree")
    prefix = expand(rs, args.max)
    rows = [(prefix.offset + i, c) for i, c in enumerate(prefix.coeffs)]
    _write_rows(("degree", "coefficient"), rows, args.format, out)
    return EXIT_OK


def _power_row(params: tuple[int, int]) -> tuple[int, int, int, int, bool]:
    n, s = params
    p = PowerIdealParams(n, s)
    computed = hilbert_depth(power_ideal_series(p)).hdepth
    formula = power_hdepth_formula(p)
    return n, s, computed, formula, computed == formula


def cmd_power_table(args, out) -> int:
    if min(args.nmin, args.smin) < 1 or args.nmax < args.nmin or args.smax < args.smin:
        raise UsageError("bounds must satisfy 1 <= nmin <= nmax and 1 <= smin <= smax")
    grid = [(n, s) for n in range(args.nmin, args.nmax + 1) for s in range(args.smin, args.smax + 1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_power_row, grid, chunksize=8))
    else:
        rows = [_power_row(g) for g in grid]
    _write_rows(("n", "s", "hdepth", "formula", "match"), rows, args.format, out)
    return EXIT_OK if all(r[4] for r in rows) else EXIT_MATH


def cmd_syzygy(args, out) -> int:
    try:
        rows = []
        for k in range(args.kmax + 1):
            p = SyzygyParams(args.n, args.r, args.u, k)
            a, b, c = syzygy_hilbert_right(p), syzygy_hilbert_left(p), syzygy_hilbert_closed(p)
            rows.append((k, a, b, c, a == b == c))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write_rows(("k", "right", "left", "closed", "match"), rows, args.format, out)
    return EXIT_OK if all(r[4] for r in rows) else EXIT_MATH


AUDITS: dict[str, Callable[[argparse.Namespace], aud.AuditReport]] = {
    "lemma4": lambda a: aud.audit_alternating_sums(a.max or 12),
    "syzygy-triple": lambda a: aud.audit_syzygy_triple(a.nmax or 10, a.kmax or 20),
    "prop0": lambda a: aud.audit_multiplied_coefficients(a.nmax or 20, a.smax or 5),
    "prop1": lambda a: aud.audit_binomial_dominance(a.nmax or 150, a.smax or 10),
    "lemma1": lambda a: aud.audit_digamma_difference(a.points or 10_000, a.seed, a.margin),
    "lemma5": lambda a: aud.audit_second_coefficient(a.nmax or 400, a.smax or 12),
    "eq14": lambda a: aud.audit_digamma_growth(a.points or 10_000, a.seed, a.margin),
    "eq15": lambda a: aud.audit_quadratic_bounds(a.nmax or 400, a.smax or 12),
    "eq19": lambda a: aud.audit_falling_ratio(a.max or 50, a.smax or 12),
    "eq5": lambda a: aud.audit_jump_difference(a.max or 60, a.smax or 30, a.margin),
    "eq7": lambda a: aud.audit_log_digamma_limit(a.points or 1000, margin=a.margin),
    "lemma3": lambda a: aud.audit_derivative_comparison(a.nmax or 120, a.smax or 6),
}


def cmd_audit(args, out) -> int:
    if args.margin <= 0:
        raise UsageError("--margin must be positive")
    report = AUDITS[args.check](args)
    if args.format == "json":
        json.dump(report.to_json(), out, indent=2)
        out.write("\n")
    else:
        out.write(report.summary() + "\n")
        for note in report.notes:
            out.write(f"  note: {note}\n")
        for params, lhs, rhs in report.failures:
            out.write(f"  FAIL {params}: lhs={lhs} rhs={rhs}\n")
    return EXIT_OK if report.passed else EXIT_MATH


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbertdepth", description="Exact Hilbert depth computations and audits."
    )
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "csv", "json"), default="text")
    series = argparse.ArgumentParser(add_help=False)
    series.add_argument("--power", nargs=2, metavar=("n=N", "s=S"), help="the ideal m^s in N variables")
    series.add_argument("--numerator", help="Laurent polynomial as 'offset:c0,c1,...' or JSON")
    series.add_argument("--n", type=int, help="exponent of (1-T) in the denominator")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hdepth", parents=[fmt, series], help="Hilbert depth of a series")
    p.add_argument("--decompose", action="store_true", help="also print a positive decomposition")
    p.set_defaults(func=cmd_hdepth)

    p = sub.add_parser("decompose", parents=[fmt, series], help="positive decomposition")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("expand", parents=[fmt], help="series coefficients up to a degree")
    p.add_argument("--numerator", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max", type=int, default=10, help="highest degree to print")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("power-table", parents=[fmt], help="Hilbert depth of m^s against the formula")
    p.add_argument("--nmin", type=int, default=1)
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--smin", type=int, default=1)
    p.add_argument("--smax", type=int, default=4)
    p.add_argument("--jobs", type=_positive_int, default=1)
    p.set_defaults(func=cmd_power_table)

    p = sub.add_parser("syzygy", parents=[fmt], help="the three syzygy Hilbert function formulas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--kmax", type=int, default=10)
    p.set_defaults(func=cmd_syzygy)

    p = sub.add_parser("audit", parents=[fmt], help="run a named inequality or identity check")
    p.add_argument("check", choices=sorted(AUDITS))
    p.add_argument("--max", type=_positive_int)
    p.add_argument("--nmax", type=_positive_int)
    p.add_argument("--smax", type=_positive_int)
    p.add_argument("--kmax", type=_positive_int)
    p.add_argument("--points", type=_positive_int)
    p.add_argument("--seed", type=int, default=aud.DEFAULT_SEED)
    p.add_argument("--margin", type=float, default=aud.DEFAULT_MARGIN)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotAHilbertSeries as exc:
        print(f"not a Hilbert series: {exc}", file=sys.stderr)
        return EXIT_MATH
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
