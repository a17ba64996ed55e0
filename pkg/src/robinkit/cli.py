"""``robinkit`` command line: scan, check, canon, epsilon, bounds, generate."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Sequence

from . import asymptotics, report
from .canonical import canonicalize, theorem1_gap_pair
from .config import Settings, load_settings
from .errors import ParseError, RobinkitError
from .factor import factorize, parse_factorization
from .functional import epsilon_trace, robin_report
from .generators import CandidateFamily, FAMILIES
from .interval import decimal_bounds
from .scan import scan

EXIT_POSITIVE, EXIT_ERROR, EXIT_NEGATIVE, EXIT_INDETERMINATE = 0, 1, 2, 3
BOUND_SUITES = ("theta", "prime-count", "dusart", "mertens")


def _common(p: argparse.ArgumentParser):
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    p.add_argument("--tolerance", type=float, default=None,
                   help="target enclosure width (default 1e-30)")
    p.add_argument("--config", default=None, help="key = value settings file")
    p.add_argument("--max-precision-escalations", type=int, default=None,
                   dest="max_precision_escalations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="robinkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", help="certified Robin violators in [lo, hi]")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.add_argument("--threads", type=int, default=None)
    _common(p)

    p = sub.add_parser("check", help="report for one factorization, e.g. 2^4*3^2*5*7")
    p.add_argument("factorization")
    _common(p)

    p = sub.add_parser("canon", help="canonical form and both gaps")
    p.add_argument("factorization")
    _common(p)

    p = sub.add_parser("epsilon", help="epsilon trace over the prefixes")
    p.add_argument("factorization")
    _common(p)

    p = sub.add_parser("bounds", help="finite-range checks of the prime bounds")
    p.add_argument("--suite", choices=BOUND_SUITES + ("all",), default="all")
    _common(p)

    p = sub.add_parser("generate", help="reports along a candidate family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--m", type=int, default=10, help="largest m (primorial, factorial)")
    p.add_argument("--count", type=int, default=8, help="chain length (ca)")
    p.add_argument("--exponents", default="3,2,1", help="comma list (descending)")
    p.add_argument("--log-only", action="store_true", help="factorial towers past m = 12")
    _common(p)
    return parser


def _settings(args) -> Settings:
    return load_settings(args.config, tolerance=args.tolerance,
                         max_precision_escalations=args.max_precision_escalations,
                         threads=getattr(args, "threads", None))


def _emit(args, items, columns, bits, out, extra=None):
    if args.emit == "json":
        report.write_json(items, columns, out, precision_bits=bits, extra=extra)
    else:
        report.write_csv(items, columns, out, precision_bits=bits)


def _reports(fs, s: Settings):
    return [robin_report(f, s.tolerance, s.max_precision_escalations) for f in fs]


def _bits(reports, s: Settings) -> int:
    return max((r.precision_bits for r in reports), default=s.precision_bits)


def cmd_scan(args, s: Settings, out) -> int:
    result = scan(args.lo, args.hi, s.threads, block=s.scan_block,
                  max_escalations=s.max_precision_escalations)
    rows = _reports((factorize(n) for n in result.violators), s)
    extra = {"indeterminate": list(result.indeterminate), "records": list(result.records),
             "fallbacks": result.fallbacks}
    _emit(args, rows, report.ROBIN_COLUMNS, _bits(rows, s), out, extra)
    return EXIT_INDETERMINATE if result.indeterminate else EXIT_POSITIVE


def cmd_check(args, s: Settings, out) -> int:
    r = robin_report(parse_factorization(args.factorization), s.tolerance,
                     s.max_precision_escalations)
    _emit(args, [r], report.ROBIN_COLUMNS, r.precision_bits, out)
    return {1: EXIT_POSITIVE, -1: EXIT_NEGATIVE}.get(r.d_sign, EXIT_INDETERMINATE)


def cmd_canon(args, s: Settings, out) -> int:
    f = parse_factorization(args.factorization)
    canon = canonicalize(f).factorization()
    rows = _reports([f, canon], s)
    pair = theorem1_gap_pair(f, s.tolerance)
    extra = {"canonical": str(canon), "ordering": pair.ordering.name}
    _emit(args, rows, report.ROBIN_COLUMNS, _bits(rows, s), out, extra)
    return EXIT_POSITIVE


def cmd_epsilon(args, s: Settings, out) -> int:
    f = parse_factorization(args.factorization)
    trace = epsilon_trace(f, s.tolerance)
    rows = []
    for i, (q, v) in enumerate(zip(f.primes, trace.values), 1):
        lo, hi = decimal_bounds(v)
        rows.append({"s": i, "p_s": q, "epsilon_lo": lo, "epsilon_hi": hi})
    if args.emit == "json":
        out.write(json.dumps({"factorization": str(f), "nonincreasing": trace.is_nonincreasing(),
                              "rows": rows}, indent=2) + "\n")
    else:
        out.write(f"# precision_bits={s.precision_bits}\n")
        w = csv.DictWriter(out, fieldnames=("s", "p_s", "epsilon_lo", "epsilon_hi"),
                           lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return EXIT_POSITIVE


def cmd_bounds(args, s: Settings, out) -> int:
    suites = BOUND_SUITES if args.suite == "all" else (args.suite,)
    rows = []
    for suite in suites:
        if suite == "theta":
            rows.append(asymptotics.check_theta_relative(s.theta_threshold, s.theta_range_hi))
            rows.append(asymptotics.check_theta_additive(s.theta_threshold, s.theta_range_hi))
        elif suite == "prime-count":
            rows.append(asymptotics.check_prime_count_bounds())
        elif suite == "dusart":
            rows.append(asymptotics.check_dusart(2, s.dusart_k_max))
        else:
            rows.append(asymptotics.check_mertens(10**7, s.mertens_envelope))
    _emit(args, rows, report.BOUND_COLUMNS, s.precision_bits, out)
    return EXIT_POSITIVE if all(r.passed for r in rows) else EXIT_NEGATIVE


def cmd_generate(args, s: Settings, out) -> int:
    if args.family == "descending":
        params = {"exponents": [int(x) for x in args.exponents.split(",")]}
    elif args.family == "ca":
        params = {"count": args.count}
    else:
        params = {"m": args.m, "log_only": args.log_only}
    rows = _reports(CandidateFamily(args.family, params), s)
    _emit(args, rows, report.ROBIN_COLUMNS, _bits(rows, s), out)
    return EXIT_POSITIVE


COMMANDS = {"scan": cmd_scan, "check": cmd_check, "canon": cmd_canon,
            "epsilon": cmd_epsilon, "bounds": cmd_bounds, "generate": cmd_generate}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        s = _settings(args)
        return COMMANDS[args.command](args, s, out)
    except ParseError as exc:
        print(f"robinkit: cannot parse factorization: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (RobinkitError, ValueError, KeyError, OSError) as exc:
        print(f"robinkit: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
