"""Divided differences as two nodes merge: recurrence, simplex integral and the confluent limit.

    python3 scripts/confluence_continuity.py --f "sin(x)" --c 0.4
"""

import argparse

from genocchi import build_table, hg_divided_difference, to_oracle, top_difference


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--f", default="sin(x)")
    p.add_argument("--c", type=float, default=0.4)
    p.add_argument("--extra", type=float, default=1.0, help="a third, fixed node")
    args = p.parse_args()

    oracle = to_oracle(args.f, 3)
    limit = top_difference(build_table(oracle, [args.c, args.c, args.extra]))
    print(f"confluent limit f[c, c, {args.extra:g}] = {limit:.15g}")
    print(f"{'h':>8} {'recurrence':>20} {'simplex':>20} {'|rec - limit|':>14}")
    for k in range(1, 11):
        h = 10.0 ** -k
        nodes = [args.c, args.c + h, args.extra]
        rec = top_difference(build_table(oracle, nodes))
        hg = hg_divided_difference(oracle, nodes) if k <= 6 else float("nan")
        print(f"{h:>8.0e} {rec:>20.15g} {hg:>20.15g} {abs(rec - limit):>14.3e}")
    print("the recurrence loses digits as h shrinks; the simplex form does not divide by h")


if __name__ == "__main__":
    main()
