"""Small W-Kostka numbers for dihedral groups I2(m), computed two ways."""

import argparse

from kostka_duality import coxeter_algebra as ca
from kostka_duality.groups import coxeter_group
from kostka_duality.tableaux import subsets


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--m", type=int, nargs="+", default=[3, 4, 5, 6, 7, 8])
    args = p.parse_args()
    for m in args.m:
        W = coxeter_group(f"I2:{m}")
        result = ca.small_w_kostka_table(W)
        print(f"I2({m}), |W| = {W.order}, routes agree: {result['routes_agree']}")
        for V in ca.irreducibles(W):
            row = [result["table"][(V.label, I)] for I in subsets(2)]
            print(f"  {str(V.label):6s} dim {V.dim}  " + "  ".join(str(x) for x in row))


if __name__ == "__main__":
    main()
