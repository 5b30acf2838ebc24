"""Re-derive the Conway polynomial table from scratch and compare with CONWAY.

For each n the Conway polynomial is the lexicographically least primitive
polynomial of degree n whose root r satisfies C_d(r^((2^n-1)/(2^d-1))) = 0
for every proper divisor d of n.  Only the standard library is used here.

    python3 scripts/verify_conway.py --max-n 16
"""

import argparse
import time

from carlitz_sbox.gf2n import CONWAY


def mulmod(a, b, m, n):
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> n & 1:
            a ^= m
    return r


def powmod(a, e, m, n):
    r = 1
    while e:
        if e & 1:
            r = mulmod(r, a, m, n)
        a = mulmod(a, a, m, n)
        e >>= 1
    return r


def prime_factors(N):
    f, d = set(), 2
    while d * d <= N:
        while N % d == 0:
            f.add(d)
            N //= d
        d += 1
    if N > 1:
        f.add(N)
    return f


def is_primitive(m, n):
    N = (1 << n) - 1
    return powmod(2, N, m, n) == 1 and all(powmod(2, N // p, m, n) != 1 for p in prime_factors(N))


def eval_gf2_poly(c, x, m, n):
    r = 0
    for i in range(c.bit_length() - 1, -1, -1):
        r = mulmod(r, x, m, n) ^ (c >> i & 1)
    return r


def conway(max_n):
    C = {1: 0b11}
    for n in range(2, max_n + 1):
        N = (1 << n) - 1
        for m in range((1 << n) | 1, 1 << (n + 1), 2):
            if not is_primitive(m, n):
                continue
            if all(eval_gf2_poly(C[d], powmod(2, N // ((1 << d) - 1), m, n), m, n) == 0
                   for d in range(1, n) if n % d == 0):
                C[n] = m
                break
    return C


def main():
    ap = argparse.ArgumentParser(description="check the Conway table")
    ap.add_argument("--max-n", type=int, default=16)
    args = ap.parse_args()
    t0 = time.perf_counter()
    C = conway(args.max_n)
    bad = [n for n in range(2, args.max_n + 1) if C[n] != CONWAY[n]]
    for n in range(2, args.max_n + 1):
        print(n, hex(C[n]), "ok" if n not in bad else f"MISMATCH (table has {hex(CONWAY[n])})")
    print(f"{time.perf_counter() - t0:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
