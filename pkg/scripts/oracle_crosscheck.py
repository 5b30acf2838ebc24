"""Compare the closed-form rank-3 classifier with exhaustive DDT/BCT counts.

    python3 scripts/oracle_crosscheck.py --n 4 5 6 7 8 --all
    python3 scripts/oracle_crosscheck.py --n 10 12        # orbit representatives only
"""

import argparse
import collections
import time

from carlitz_sbox.cli import orbit_representatives
from carlitz_sbox.gf2n import get_field
from carlitz_sbox.rank3 import Rank3Params, bu_is_six, du_classify
from carlitz_sbox.uniformity import bu_max, ddt_max


def main():
    ap = argparse.ArgumentParser(description="classifier vs oracle")
    ap.add_argument("--n", type=int, nargs="+", default=[4, 6, 8])
    ap.add_argument("--all", action="store_true", help="every beta, not just orbit representatives")
    args = ap.parse_args()
    bad = 0
    for n in args.n:
        F = get_field(n)
        t0 = time.perf_counter()
        if args.all:
            betas = [b for b in range(2, F.order) if not F.is_in_f4(b)]
        else:
            betas = [b for b, _ in orbit_representatives(F)]
        hist = collections.Counter()
        mism = []
        for beta in betas:
            P = Rank3Params(beta, F)
            g = P.table()
            d, b = ddt_max(g)[0], bu_max(g)[0]
            hist[(d, b)] += 1
            if du_classify(P) != d or bu_is_six(P) != (b == 6):
                mism.append(beta)
        bad += len(mism)
        spread = ", ".join(f"{k}:{v}" for k, v in sorted(hist.items()))
        print(f"n={n}: {len(betas)} betas, mismatches={mism}, (delta, boomerang) counts {{{spread}}} "
              f"[{time.perf_counter() - t0:.1f}s]")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
