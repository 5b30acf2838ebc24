"""Check that formula witnesses (a, c) really give bu_G(a, c) >= 8.

Reports, per polynomial, how often the first candidate works and how often a
later candidate had to be used.

    python3 scripts/witness_check.py --n 6 8 10 12
"""

import argparse
import collections

from carlitz_sbox.gf2n import get_field
from carlitz_sbox.rank3 import Rank3Params, bu_is_six, bu_witness
from carlitz_sbox.uniformity import bu_point


def main():
    ap = argparse.ArgumentParser(description="witness soundness")
    ap.add_argument("--n", type=int, nargs="+", default=[6, 8, 10])
    args = ap.parse_args()
    failures = 0
    for n in args.n:
        F = get_field(n)
        first, later, failed = collections.Counter(), collections.Counter(), []
        for beta in range(2, F.order):
            if F.is_in_f4(beta):
                continue
            P = Rank3Params(beta, F)
            if bu_is_six(P):
                continue
            g = P.table()
            w = bu_witness(P, validate=False)
            if bu_point(g, w.a, w.c) >= 8:
                first[w.source] += 1
                continue
            w = bu_witness(P, validate=True, table=g)
            if w.validated:
                later[w.source] += 1
            else:
                failed.append(beta)
        failures += len(failed)
        print(f"n={n}: first candidate {dict(first)}, later candidate {dict(later)}, failed {failed}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
