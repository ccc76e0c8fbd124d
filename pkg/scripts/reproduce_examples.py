"""Recompute the two printed example matrices and show where they differ, if anywhere."""

import argparse

from tpkit.compound import compound
from tpkit.condensation import condense
from tpkit.exact import format_rational
from tpkit.fixtures import CONDENSATION_6, CONDENSATION_6_D1, HILBERT_4, HILBERT_4_C2
from tpkit.positivity import is_tp_k


def show(title, computed, printed, verbose):
    diffs = [
        (i, j)
        for i in range(1, computed.nrows + 1)
        for j in range(1, computed.ncols + 1)
        if computed[i, j] != printed[i, j]
    ]
    print(f"{title}: {computed.nrows}x{computed.ncols}, {len(diffs)} entries differ from the printed matrix")
    if verbose:
        width = max(len(s) for row in computed.to_strings() for s in row)
        for row in computed.to_strings():
            print("  " + " ".join(s.rjust(width) for s in row))
    for i, j in diffs:
        print(f"  ({i},{j}): computed {format_rational(computed[i, j])}, printed {format_rational(printed[i, j])}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true", help="print the full matrices")
    args = ap.parse_args()

    C2 = compound(HILBERT_4, 2)
    show("C_2 of the 4x4 Hilbert matrix", C2, HILBERT_4_C2, args.verbose)
    for k in (2, 3):
        v = is_tp_k(C2, k)
        print(f"  TP_{k}: {v.holds}" + ("" if v.holds else f" (witness {v.witness.rows}x{v.witness.cols} = {v.witness.value})"))

    D1 = condense(CONDENSATION_6, 1)
    show("D_1 of the printed 6x6", D1, CONDENSATION_6_D1, args.verbose)
    for k in (3, 4):
        v = is_tp_k(D1, k)
        print(f"  TP_{k}: {v.holds}" + ("" if v.holds else f" (witness {v.witness.rows}x{v.witness.cols} = {v.witness.value})"))


if __name__ == "__main__":
    main()
