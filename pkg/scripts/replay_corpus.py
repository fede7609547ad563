"""Replay the Simpson error argument over a corpus of functions and intervals.

    python3 scripts/replay_corpus.py [--f EXPR ...] [--interval A B ...]
"""

import argparse
import time

from genocchi import to_oracle
from genocchi.replay import replay

CORPUS = ["sin(x)", "exp(x)", "x^4", "x^6", "1/(1+x^2)"]
INTERVALS = [(0.0, 1.0), (-1.0, 2.0)]


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--f", action="append", help="expression (repeatable)")
    p.add_argument("--interval", nargs=2, type=float, action="append", metavar=("A", "B"))
    p.add_argument("--verbose", action="store_true", help="print every check")
    args = p.parse_args()

    header = f"{'f':<12} {'[a, b]':<12} {'90 G(1)':>14} {'N':>12} {'rigor':>9} {'worst':>10} {'sec':>6}  ok"
    print(header)
    print("-" * len(header))
    for f in args.f or CORPUS:
        for a, b in args.interval or INTERVALS:
            start = time.perf_counter()
            report = replay(to_oracle(f), a, b)
            elapsed = time.perf_counter() - start
            # largest residual among equality checks
            worst = max(abs(c.residual) for c in report.checks if c.relation == "eq")
            print(f"{f:<12} {f'[{a:g}, {b:g}]':<12} {90 * report.G1:>14.6e} {report.N:>12.6g} "
                  f"{report.N_rigor.value:>9} {worst:>10.2e} {elapsed:>6.2f}  "
                  f"{'yes' if report.overall else 'NO'}")
            if args.verbose:
                for c in report.checks:
                    print(f"    {'ok ' if c.passed else 'BAD'} {c.name}: {c.lhs:.6e} vs {c.rhs:.6e}")


if __name__ == "__main__":
    main()
