#!/usr/bin/env python3
"""Run every axiom certifier on every shipped family and print the reports.

Usage: python scripts/axiom_report.py [--max N] [--lp-max M] [--json]
"""

import argparse
import json
import sys
import time

from egflab.families import ENDOFUNCTIONS, GRAPHS, PARTITIONS, burnside_family
from egflab.sfd import check_direct_sum_axioms, check_levi, check_unique_factorization


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max", type=int, default=4, help="support-size bound")
    parser.add_argument("--lp-max", type=int, default=None)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    lp_max = args.lp_max if args.lp_max is not None else min(args.max, 4)

    families = [GRAPHS, ENDOFUNCTIONS, PARTITIONS, burnside_family(1, 2)]
    all_ok = True
    results = []
    for family in families:
        for checker, bound in (
            (check_direct_sum_axioms, args.max),
            (check_levi, lp_max),
            (check_unique_factorization, args.max),
        ):
            start = time.perf_counter()
            report = checker(family, bound)
            elapsed = time.perf_counter() - start
            all_ok &= report.status == "PASS"
            results.append((family.name, bound, report, elapsed))
            if not args.json:
                print(f"{family.name:24s} max={bound}  {report}  [{elapsed:.2f}s]")
    if args.json:
        print(json.dumps(
            [
                {"family": name, "max_support_size": bound, **report.to_dict()}
                for name, bound, report, _ in results
            ],
            default=str,
        ))
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
