"""Command-line front end.

Exit codes: 0 success, 1 resource/overflow failure or a scan point that
failed, 2 usage or domain error, 3 numeric-integrity failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict
from fractions import Fraction
from typing import Sequence

from . import __version__
from .arith import build_sieve
from .divisor import sigma_z_beta
from .errors import CohenMomentsError, DomainError, NumericIntegrityError
from .moments import MomentQuery, moment_brute, moment_exact, moment_report
from .partial_sums import (
    PartialSumQuery,
    delta_report,
    sigma_pair_partial_exact,
    sigma_partial_exact,
)
from .ramanujan import CohenQuery, cohen_sum_direct, cohen_sum_identity, row_sum, row_table
from .scan import load_config, parse_complex, render_csv, render_json, run_scan
from .series import verify_cohen_series, verify_crum_pair, verify_crum_single, verify_phi_series
from .zeta import ZetaConfig, zeta

EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def fmt(value) -> str:
    """Integers exactly; reals and complex values to 12 significant digits."""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else str(value.numerator)
    if isinstance(value, complex):
        if value.imag == 0:
            return f"{value.real:.12g}"
        sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
        return f"{value.real:.12g}{sign}{abs(value.imag):.12g}i"
    return f"{float(value):.12g}"


def _jsonable(value):
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    if isinstance(value, (complex, Fraction)):
        return fmt(value)
    return float(value)


def _emit(fields: dict, fmt_name: str) -> None:
    if fmt_name == "json":
        print(json.dumps({k: _jsonable(v) for k, v in fields.items()}))
    elif len(fields) == 1:
        print(fmt(next(iter(fields.values()))))
    else:
        for k, v in fields.items():
            print(f"{k}={fmt(v)}")


def _real(text: str) -> int | Fraction:
    """Decimal string to an exact int or Fraction."""
    try:
        val = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a real number: {text!r}") from exc
    return val.numerator if val.denominator == 1 else val


def _report_fields(rep) -> dict:
    return {
        "exact": rep.exact,
        "main": rep.main_term,
        "error": rep.error,
        "bound": rep.bound_shape,
        "normalized": rep.normalized_error,
    }


# ---------------------------------------------------------------- commands


def cmd_csum(args) -> int:
    query = CohenQuery(args.q, args.beta, args.n)
    if args.method == "identity":
        _emit({"value": cohen_sum_identity(query)}, args.format)
        return 0
    direct = cohen_sum_direct(query)
    if args.method == "both":
        ident = cohen_sum_identity(query)
        if ident != direct:
            raise NumericIntegrityError(f"direct {direct} != identity {ident}")
    _emit({"value": direct}, args.format)
    return 0


def cmd_sigma(args) -> int:
    _emit({"value": sigma_z_beta(args.n, parse_complex(args.z), args.beta)}, args.format)
    return 0


def cmd_row(args) -> int:
    tables = build_sieve(args.x)
    if args.n is not None:
        _emit({"value": row_sum(args.beta, args.n, args.x, tables)}, args.format)
        return 0
    if args.y is None:
        raise DomainError("row needs --n or --y")
    rows = row_table(args.beta, args.x, math.floor(_real(args.y)), tables)
    if args.format == "json":
        print(json.dumps([int(v) for v in rows]))
    else:
        print("\n".join(str(int(v)) for v in rows))
    return 0


def cmd_moment(args) -> int:
    query = MomentQuery(args.k, args.beta, args.x, _real(args.y))
    if args.brute:
        _emit({"value": moment_brute(query)}, args.format)
        return 0
    tables = build_sieve(args.x)
    if args.target:
        _emit(_report_fields(moment_report(args.target, query, tables)), args.format)
    else:
        _emit({"value": moment_exact(query, tables)}, args.format)
    return 0


def _partial_query(args, pair: bool) -> PartialSumQuery:
    x = int(args.x) if args.integer else float(_real(args.x))
    if pair:
        return PartialSumQuery(x, args.beta, parse_complex(args.z1), parse_complex(args.z2))
    return PartialSumQuery(x, args.beta, parse_complex(args.z))


def cmd_partial_sum(args) -> int:
    query = _partial_query(args, pair=False)
    if args.report:
        _emit(_report_fields(delta_report("single", query)), args.format)
    else:
        _emit({"value": sigma_partial_exact(query)}, args.format)
    return 0


def cmd_pair_sum(args) -> int:
    query = _partial_query(args, pair=True)
    if args.report:
        _emit(_report_fields(delta_report("pair", query)), args.format)
    else:
        _emit({"value": sigma_pair_partial_exact(query)}, args.format)
    return 0


def cmd_zeta(args) -> int:
    cfg = ZetaConfig(series_terms=args.N, correction_terms=args.M)
    _emit({"value": zeta(parse_complex(args.s), cfg)}, args.format)
    return 0


def cmd_verify_series(args) -> int:
    s = parse_complex(args.s)
    cutoffs = [int(v) for v in (args.Q or args.N or "100,1000,10000").split(",")]
    checks = []
    if args.identity in ("cohen", "phi"):
        tables = build_sieve(max(cutoffs))
    for t in cutoffs:
        if args.identity == "cohen":
            checks.append(verify_cohen_series(args.n, args.beta, s, t, tables))
        elif args.identity == "phi":
            checks.append(verify_phi_series(args.n, s.real, t, tables))
        elif args.identity == "crum":
            checks.append(verify_crum_single(parse_complex(args.z), args.beta, s, t))
        else:
            checks.append(verify_crum_pair(parse_complex(args.z1), parse_complex(args.z2), args.beta, s, t))
    if args.format == "json":
        print(json.dumps([{k: _jsonable(v) for k, v in asdict(c).items()} for c in checks]))
    else:
        print("truncation,residual,partial,reference")
        for c in checks:
            print(f"{c.truncation},{c.residual!r},{fmt(c.partial)},{fmt(c.reference)}")
    return 0


def cmd_scan(args) -> int:
    config = load_config(args.config)
    records, reg = run_scan(config, workers=args.workers, output_path=args.out, fmt=args.format)
    if not (args.out or config.output_path):
        sys.stdout.write(render_json(records, reg) if args.format == "json" else render_csv(records))
    summary = {k: _jsonable(v) for k, v in asdict(reg).items()}
    print(json.dumps({"regression": summary}), file=sys.stderr)
    return 0 if all(r.ok for r in records) else EXIT_FAILED


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cohen-moments",
        description="Generalized Ramanujan sums, divisor sums and their moment asymptotics.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        return p

    p = add("csum", cmd_csum, "c_{q,beta}(n)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--beta", type=int, default=1)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("identity", "direct", "both"), default="identity")

    p = add("sigma", cmd_sigma, "sigma_{z,beta}(n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", default="0")
    p.add_argument("--beta", type=int, default=1)

    p = add("row", cmd_row, "sum over q <= x of c_{q,beta}(n), or the table n <= y")
    p.add_argument("--beta", type=int, default=1)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--y")

    p = add("moment", cmd_moment, "C_{k,beta}(x, y)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", type=int, default=1)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--brute", action="store_true", help="use the defining double loop")
    p.add_argument("--target", choices=("prop1", "thm2", "thm3"), help="print the asymptotic report")

    for name, func, pair in (("partial-sum", cmd_partial_sum, False), ("pair-sum", cmd_pair_sum, True)):
        p = add(name, func, "primed partial sum of " + ("sigma*sigma" if pair else "sigma"))
        p.add_argument("--x", required=True)
        p.add_argument("--beta", type=int, default=1)
        if pair:
            p.add_argument("--z1", required=True)
            p.add_argument("--z2", required=True)
        else:
            p.add_argument("--z", required=True)
        p.add_argument("--integer", action="store_true", help="treat x as an exact integer")
        p.add_argument("--report", action="store_true", help="print main term and error report")

    p = add("zeta", cmd_zeta, "Riemann zeta via Euler-Maclaurin")
    p.add_argument("--s", required=True)
    p.add_argument("--N", type=int, default=None, help="direct-sum cutoff")
    p.add_argument("--M", type=int, default=12, help="Bernoulli corrections")

    p = add("verify-series", cmd_verify_series, "Dirichlet-series truncation residuals")
    p.add_argument("--identity", choices=("cohen", "crum", "crum-pair", "phi"), required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--beta", type=int, default=1)
    p.add_argument("--s", required=True)
    p.add_argument("--z", default="0")
    p.add_argument("--z1", default="0")
    p.add_argument("--z2", default="0")
    p.add_argument("--Q", help="comma-separated truncations (cohen, phi)")
    p.add_argument("--N", help="comma-separated truncations (crum, crum-pair)")

    p = add("scan", cmd_scan, "error scan over an x-grid from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NumericIntegrityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CohenMomentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
