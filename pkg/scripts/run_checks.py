#!/usr/bin/env python3
"""Desk-scale verification report.

Runs the exhaustive algebra checks over a range of shapes and prints one
line per (shape, check).  Exit code 2 if anything unexpected fails.

Usage:
    python scripts/run_checks.py [--max-n 6]
"""
import argparse
import sys
import time

from arcalg.arc_algebra import (check_associativity, check_degree_additivity,
                                check_nested_agreement, check_order_independence,
                                check_unit)
from arcalg.diagrams import Shape


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=6)
    args = parser.parse_args()

    shapes = [Shape(n, k) for n in range(2, args.max_n + 1)
              for k in range(1, n // 2 + 1)]
    failed = False
    for shape in shapes:
        for name, run, expect_ok in [
            ("unit(+1)", lambda s=shape: check_unit(s, 1), True),
            ("unit(-1)", lambda s=shape: check_unit(s, -1), True),
            ("orders(+1)", lambda s=shape: check_order_independence(s, 1), True),
            ("orders(-1)", lambda s=shape: check_order_independence(s, -1), True),
            ("degree(+1)", lambda s=shape: check_degree_additivity(s, 1), True),
            ("degree(-1)", lambda s=shape: check_degree_additivity(s, -1), True),
            ("nested=-1", lambda s=shape: check_nested_agreement(s), True),
            ("assoc(+1)", lambda s=shape: check_associativity(s, 1), True),
            ("assoc(-1)", lambda s=shape: check_associativity(s, -1), None),
        ]:
            t0 = time.time()
            res = run()
            verdict = "PASS" if res.ok else "FAIL"
            line = f"({shape.n},{shape.k}) {name:>11}: {verdict}  [{time.time()-t0:6.2f}s]"
            if not res.ok:
                line += f"  witness: {res.witness}"
            print(line, flush=True)
            if expect_ok is True and not res.ok:
                failed = True
    return 2 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
