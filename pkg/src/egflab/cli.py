"""Command-line front end.

Subcommands: ``egf`` (class-sum tables), ``verify`` (identity and axiom
checks), ``normal`` (normal ordering), ``stirling`` (generalized Stirling
triangles), ``compare-bfile`` (offline OEIS b-file comparison).

Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage error,
3 resource-cap error.  Output is deterministic given the flags and cache
state; ``EGFLAB_CACHE_DIR`` sets the default cache location.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import statistics as stats
from .bfile import MATCH, compare_with_bfile, read_bfile
from .cache import CoefficientCache
from .errors import (
    BFileFormatError,
    BlowupLimitError,
    CapExceededError,
    EgflabError,
    InhomogeneousOperatorError,
    NotOneAnnihilationError,
    OperatorSyntaxError,
    UnknownFeatureError,
)
from .families import get_family
from .report import FAIL, CheckReport
from .rings import format_ring_elem
from .sfd import (
    LEVI_CAP,
    check_direct_sum_axioms,
    check_levi,
    check_unique_factorization,
)
from .weyl import (
    format_normal,
    gen_stirling,
    normal_order,
    parse_operator,
    power_normal,
    verify_one_annihilation,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _add_family_options(parser, with_stat=True):
    parser.add_argument(
        "--family",
        required=True,
        choices=("graphs", "endofunctions", "partitions", "burnside"),
    )
    parser.add_argument("--a", type=int, default=None, help="burnside iterate exponent a")
    parser.add_argument("--b", type=int, default=None, help="burnside iterate exponent b")
    if with_stat:
        parser.add_argument(
            "--stat",
            default="1",
            help="statistic: '1' or comma-separated feature=variable pairs",
        )


def _add_cache_options(parser):
    parser.add_argument("--cache", default=None, help="coefficient cache file (JSON lines)")
    parser.add_argument("--no-cache", action="store_true", help="force recomputation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="egflab",
        description="Exact tables and checks for labelled-structure series and normal ordering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_egf = sub.add_parser("egf", help="print class sums c(X_[1..n]) for n = 0..order")
    _add_family_options(p_egf)
    p_egf.add_argument("--atoms", action="store_true", help="sum over atoms only")
    p_egf.add_argument("--order", type=int, default=6)
    p_egf.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    _add_cache_options(p_egf)

    p_verify = sub.add_parser("verify", help="run an identity or axiom check")
    verify_sub = p_verify.add_subparsers(dest="check", required=True)

    p_expf = verify_sub.add_parser("expformula", help="series of family = exp(series of atoms)")
    _add_family_options(p_expf)
    p_expf.add_argument("--order", type=int, default=5)
    p_expf.add_argument("--format", choices=("plain", "json"), default="plain")
    _add_cache_options(p_expf)

    p_axioms = verify_sub.add_parser("axioms", help="direct-sum, Levi, unique factorization")
    _add_family_options(p_axioms, with_stat=False)
    p_axioms.add_argument("--max", type=int, default=4, help="support size bound")
    p_axioms.add_argument(
        "--lp-max", type=int, default=None,
        help=f"Levi bound (default min(--max, 4), hard cap {LEVI_CAP})",
    )
    p_axioms.add_argument("--format", choices=("plain", "json"), default="plain")

    for alias in ("stirling-identity", "eq15"):
        p_s = verify_sub.add_parser(alias, help="bivariate block-count identity for partitions")
        p_s.add_argument("--order", type=int, default=7)
        p_s.add_argument("--format", choices=("plain", "json"), default="plain")

    for alias in ("factorization", "eq22"):
        p_f = verify_sub.add_parser(alias, help="one-annihilation factorization of the table")
        p_f.add_argument("operator")
        p_f.add_argument("--order", type=int, default=6)
        p_f.add_argument("--format", choices=("plain", "json"), default="plain")

    p_normal = sub.add_parser("normal", help="normal-order an operator expression")
    p_normal.add_argument("operator")
    p_normal.add_argument("--power", type=int, default=1)

    p_stirling = sub.add_parser("stirling", help="generalized Stirling triangle of an operator")
    p_stirling.add_argument("operator")
    p_stirling.add_argument("--n", type=int, default=5, help="largest power")
    p_stirling.add_argument("--format", choices=("plain", "json", "csv"), default="plain")

    p_bfile = sub.add_parser("compare-bfile", help="compare a generated sequence to a b-file")
    _add_family_options(p_bfile)
    p_bfile.add_argument("--atoms", action="store_true")
    p_bfile.add_argument("--order", type=int, default=6)
    p_bfile.add_argument("--bfile", required=True)
    _add_cache_options(p_bfile)

    return parser


def _family_from_args(args):
    return get_family(args.family, a=args.a, b=args.b)


def _cache_from_args(args):
    if getattr(args, "no_cache", False):
        return None
    if getattr(args, "cache", None):
        return CoefficientCache(args.cache)
    env_dir = os.environ.get("EGFLAB_CACHE_DIR")
    if env_dir:
        return CoefficientCache(os.path.join(env_dir, "egf-cache.jsonl"))
    return None


def _series_values(args):
    family = _family_from_args(args)
    stat = stats.Statistic.parse(args.stat)
    cache = _cache_from_args(args)
    series = stats.egf_of(
        family, stat, atoms_only=args.atoms, order=args.order, cache=cache
    )
    return family, stat, series


def _report_exit(report: CheckReport, fmt: str) -> int:
    if fmt == "json":
        print(report.to_json())
    else:
        print(report)
    return EXIT_FAIL if report.status == FAIL else EXIT_PASS


def cmd_egf(args) -> int:
    _, _, series = _series_values(args)
    rendered = [format_ring_elem(c) for c in series.coeffs]
    if args.format == "plain":
        if any(" " in cell for cell in rendered):
            # polynomial values contain spaces; one row per coefficient
            for n, cell in enumerate(rendered):
                print(f"{n}: {cell}")
        else:
            print(" ".join(rendered))
    elif args.format == "json":
        print(json.dumps({"order": series.order, "coefficients": rendered}))
    else:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(("n", "value"))
        for n, value in enumerate(rendered):
            writer.writerow((n, value))
        sys.stdout.write(out.getvalue())
    return EXIT_PASS


def cmd_verify(args) -> int:
    if args.check == "expformula":
        family = _family_from_args(args)
        stat = stats.Statistic.parse(args.stat)
        cache = _cache_from_args(args)
        report = stats.verify_exponential_formula(family, stat, args.order, cache=cache)
        return _report_exit(report, args.format)
    if args.check == "axioms":
        family = _family_from_args(args)
        lp_max = args.lp_max if args.lp_max is not None else min(args.max, 4)
        reports = [
            check_direct_sum_axioms(family, args.max),
            check_levi(family, lp_max),
            check_unique_factorization(family, args.max),
        ]
        if args.format == "json":
            print(json.dumps([r.to_dict() for r in reports], default=str))
        else:
            for r in reports:
                print(r)
        return EXIT_FAIL if any(r.status == FAIL for r in reports) else EXIT_PASS
    if args.check in ("stirling-identity", "eq15"):
        report = stats.verify_stirling_identity(args.order)
        return _report_exit(report, args.format)
    if args.check in ("factorization", "eq22"):
        expr = parse_operator(args.operator)
        report = verify_one_annihilation(expr, args.order)
        return _report_exit(report, args.format)
    raise AssertionError(f"unhandled check {args.check}")


def cmd_normal(args) -> int:
    expr = parse_operator(args.operator)
    if args.power == 1:
        print(format_normal(normal_order(expr)))
    else:
        print(format_normal(power_normal(expr, args.power)))
    return EXIT_PASS


def cmd_stirling(args) -> int:
    expr = parse_operator(args.operator)
    table = gen_stirling(expr, args.n)
    if args.format == "json":
        print(table.to_json())
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(("n", "k", "value"))
        for n, k, value in table.csv_rows():
            writer.writerow((n, k, value))
        sys.stdout.write(out.getvalue())
    else:
        width = table.max_k()
        for n in sorted(table.rows):
            row = table.rows[n]
            cells = [str(row.get(k, Fraction(0))) for k in range(width + 1)]
            print(f"{n}: " + " ".join(cells))
    return EXIT_PASS


def cmd_compare_bfile(args) -> int:
    _, _, series = _series_values(args)
    generated: dict[int, int] = {}
    for n, raw in enumerate(series.coeffs):
        if hasattr(raw, "is_constant"):
            if not raw.is_constant():
                print(
                    "error: the selected sequence is not integer-valued; "
                    "pick an integer statistic such as --stat 1",
                    file=sys.stderr,
                )
                return EXIT_USAGE
            raw = raw.constant_value()
        value = Fraction(raw)
        if value.denominator != 1:
            print("error: the selected sequence has non-integer values", file=sys.stderr)
            return EXIT_USAGE
        generated[n] = value.numerator
    table = read_bfile(args.bfile)
    outcome = compare_with_bfile(generated, table)
    print(outcome)
    return EXIT_PASS if outcome.status == MATCH else EXIT_FAIL


_HANDLERS = {
    "egf": cmd_egf,
    "verify": cmd_verify,
    "normal": cmd_normal,
    "stirling": cmd_stirling,
    "compare-bfile": cmd_compare_bfile,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (CapExceededError, BlowupLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (
        OperatorSyntaxError,
        BFileFormatError,
        NotOneAnnihilationError,
        InhomogeneousOperatorError,
        UnknownFeatureError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EgflabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
