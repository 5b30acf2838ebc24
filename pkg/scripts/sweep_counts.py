"""Count beta outside GF(4) for which [0,1,beta,x] has boomerang uniformity 6.

    python3 scripts/sweep_counts.py            # n = 4..12
    python3 scripts/sweep_counts.py --deep     # adds n = 14, 16
"""

import argparse

from carlitz_sbox.cli import sweep

REFERENCE = {4: (4, 0), 6: (6, 6), 8: (16, 8), 10: (80, 50), 12: (264, 180), 14: (1148, 784), 16: (3696, 2080)}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--deep", action="store_true")
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    ns = [4, 6, 8, 10, 12] + ([14, 16] if args.deep else [])
    print(f"{'n':>3} {'bu6':>6} {'du4&bu6':>8} {'orbits':>7} {'ms':>9}  ref")
    bad = 0
    for n in ns:
        r = sweep(n, jobs=args.jobs)
        ok = (r.count_bu6, r.count_du4_bu6) == REFERENCE[n]
        bad += not ok
        print(f"{n:>3} {r.count_bu6:>6} {r.count_du4_bu6:>8} {r.orbits:>7} {r.elapsed_ms:>9.1f}  {'ok' if ok else 'MISMATCH'}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
