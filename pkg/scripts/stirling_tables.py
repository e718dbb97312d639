#!/usr/bin/env python3
"""Generalized Stirling triangles for a few homogeneous operators.

Prints the triangle of each operator up to the requested power and, for
one-annihilation operators, runs the factorization check on the table.
"""

import argparse
import sys

from egflab.errors import NotOneAnnihilationError
from egflab.weyl import gen_stirling, parse_operator, verify_one_annihilation

DEFAULT_OPERATORS = ("ad a", "ad ad a", "ad a a", "ad a ad")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("operators", nargs="*", default=list(DEFAULT_OPERATORS))
    parser.add_argument("--n", type=int, default=6, help="largest power")
    args = parser.parse_args()

    ok = True
    for text in args.operators:
        expr = parse_operator(text)
        table = gen_stirling(expr, args.n)
        print(f"operator {text!r}  (excess {table.excess})")
        width = table.max_k()
        for n in sorted(table.rows):
            cells = " ".join(str(table.value(n, k)) for k in range(width + 1))
            print(f"  {n}: {cells}")
        try:
            report = verify_one_annihilation(expr, args.n)
        except NotOneAnnihilationError:
            print("  factorization: not applicable (more than one annihilation)")
            continue
        ok &= report.status == "PASS"
        print(f"  factorization: {report.status}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
