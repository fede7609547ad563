"""Composite Simpson error against its certificate as the panel count doubles.

    python3 scripts/composite_convergence.py --f "exp(x)" --a 0 --b 1 --exact 1.718281828459045
"""

import argparse
import math

from genocchi import composite_simpson, to_oracle


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--f", default="exp(x)")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--exact", type=float, default=math.e - 1.0,
                   help="reference value of the integral")
    p.add_argument("--max-panels", type=int, default=64)
    args = p.parse_args()

    oracle = to_oracle(args.f)
    print(f"{'m':>5} {'error':>12} {'bound':>12} {'bound/error':>12} {'ratio':>8}")
    prev = None
    m = 1
    while m <= args.max_panels:
        res = composite_simpson(oracle, args.a, args.b, m)
        err = abs(res.value - args.exact)
        ratio = f"{prev / err:8.2f}" if prev and err else f"{'':>8}"
        slack = res.certificate.bound / err if err else math.inf
        print(f"{m:>5} {err:>12.4e} {res.certificate.bound:>12.4e} {slack:>12.3f} {ratio}")
        prev = err
        m *= 2
    print(f"certificate rigor: {res.certificate.rigor.value}; halving h should divide the error by ~16")


if __name__ == "__main__":
    main()
