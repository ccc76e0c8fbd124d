"""Tabulate the rational enclosures of 4cos^2(pi/(n+1)) and test geometric matrices against them."""

import argparse
from decimal import Decimal, localcontext
from fractions import Fraction

from tpkit.exact import ExactMatrix
from tpkit.positivity import is_tp, is_tp2c, tp2c_threshold


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--digits", type=int, default=32)
    args = ap.parse_args()
    print(f"{'n':>3}  {'lower':>{args.digits + 2}}  width        q=ceil(upper): TP_2(q)  TP")
    for n in range(1, args.max_n + 1):
        th = tp2c_threshold(n)
        q = Fraction(-(-th.upper.numerator // th.upper.denominator))
        A = ExactMatrix.from_function(n, n, lambda i, j: q ** (i * j))
        with localcontext() as ctx:
            ctx.prec = args.digits
            lower = str(Decimal(th.lower.numerator) / Decimal(th.lower.denominator))
        print(f"{n:3d}  {lower:>{args.digits + 2}}  {float(th.width):.2e}   q={q}: {is_tp2c(A, q).holds!s:5s}  {is_tp(A).holds}")


if __name__ == "__main__":
    main()
