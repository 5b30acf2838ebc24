"""Command-line front end.

    carlitz-sbox analyze --n 8 --beta 1d [--oracle]
    carlitz-sbox brute --n 8 --chain "0,1,1d,x"
    carlitz-sbox sweep --n 4 6 8 10 12 [--jobs 4] [--format json]
    carlitz-sbox involution --n 6 --beta 9 --gamma 0
    carlitz-sbox selftest

Exit status: 0 on success, 1 on usage errors, 2 when a closed-form verdict
disagrees with the oracle or a self-check fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .carlitz import as_permutation, format_chain, make_involution, parse_chain, rank3_chain
from .gf2n import MAX_DEGREE, MIN_DEGREE, GF2n, get_field
from .rank3 import DEGENERATE, Rank3Params, classify, sweep_counts
from .uniformity import (
    ORACLE_GUARD, PermTable, algebraic_degree, bct_max, bct_table, bu_max, ddt_max, ddt_table,
)

DEFAULT_SWEEP_N = (4, 6, 8, 10, 12)
DEEP_FROM = 14

EXIT_OK, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    n: list
    modulus: int | None = None
    jobs: int = 1
    fmt: str = "json"
    out: str | None = None
    oracle_guard: int = ORACLE_GUARD
    seed: int = 0

    def __post_init__(self):
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        for n in self.n:
            if not MIN_DEGREE <= n <= MAX_DEGREE:
                raise UsageError(f"n={n} outside {MIN_DEGREE}..{MAX_DEGREE}")

    def field(self, n: int | None = None) -> GF2n:
        n = self.n[0] if n is None else n
        try:
            return get_field(n, self.modulus)
        except ValueError as e:
            raise UsageError(str(e)) from None


# -- sweep -----------------------------------------------------------------

@dataclass
class SweepRow:
    n: int
    count_bu6: int
    count_du4_bu6: int
    orbits: int
    elapsed_ms: float


def orbit_representatives(F: GF2n) -> list[tuple[int, int]]:
    """(rep, orbit size) for each Frobenius orbit outside GF(4); rep is the smallest bit value."""
    seen = bytearray(F.order)
    reps = []
    for x in range(F.order):
        if seen[x]:
            continue
        orbit = [x]
        y = F.sqr(x)
        while y != x:
            orbit.append(y)
            y = F.sqr(y)
        for y in orbit:
            seen[y] = 1
        if not F.is_in_f4(x):
            reps.append((x, len(orbit)))
    return reps


def _sweep_chunk(args):
    n, modulus, reps = args
    F = get_field(n, modulus)
    c6 = c46 = 0
    for beta, size in reps:
        six, six4 = sweep_counts(Rank3Params(beta, F))
        c6 += six * size
        c46 += six4 * size
    return c6, c46


def sweep(n: int, modulus: int | None = None, jobs: int = 1) -> SweepRow:
    """Count beta outside GF(4) whose [0,1,beta,x] has boomerang uniformity 6 (and also DU 4)."""
    t0 = time.perf_counter()
    F = get_field(n, modulus)
    reps = orbit_representatives(F)
    if jobs == 1:
        c6, c46 = _sweep_chunk((n, F.modulus, reps))
    else:
        # contiguous chunks; the sums do not depend on the split
        k = max(1, -(-len(reps) // (4 * jobs)))
        chunks = [(n, F.modulus, reps[i : i + k]) for i in range(0, len(reps), k)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_sweep_chunk, chunks))
        c6 = sum(p[0] for p in parts)
        c46 = sum(p[1] for p in parts)
    return SweepRow(n, c6, c46, len(reps), round((time.perf_counter() - t0) * 1000, 3))


# -- analysis helpers ------------------------------------------------------

def _hex(v) -> str:
    return format(int(v), "x")


def _pair(p):
    return None if p is None else [_hex(p[0]), _hex(p[1])]


def _parse_beta(F: GF2n, text: str) -> int:
    try:
        return F.parse(text).bits
    except ValueError as e:
        raise UsageError(f"bad field element {text!r}: {e}") from None


def _guard_ok(F: GF2n, cfg: RunConfig) -> bool:
    return F.n <= cfg.oracle_guard


def _oracle_rank3(F: GF2n, beta: int) -> dict:
    t0 = time.perf_counter()
    g = PermTable(rank3_chain(beta, F).table, F)
    d, dw = ddt_max(g, None)
    b, bw = bu_max(g, None)
    return {
        "delta": d,
        # ddt of G at (b, a) is du_G(a, b)
        "du_witness": [_hex(dw[1]), _hex(dw[0])],
        "boomerang": b,
        "bu_witness": _pair(bw),
        "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3),
    }


def analyze(F: GF2n, beta: int, cfg: RunConfig, oracle: bool = False, witness: bool = True) -> tuple[dict, int]:
    out = {"n": F.n, "modulus": _hex(F.modulus), "beta": _hex(beta),
           "chain": format_chain(rank3_chain(beta, F)) if beta else None}
    if beta == 0:
        raise UsageError("beta must be nonzero")
    if beta == 1:
        out.update(du=DEGENERATE, delta=F.order, boomerang=F.order, method="closed_form",
                   note="[0,1,1,x] fixes 0 and 1 and is x+1 elsewhere, so both uniformities are 2^n")
        if oracle and _guard_ok(F, cfg):
            o = _oracle_rank3(F, beta)
            out["oracle"] = o
            out["agreement"] = o["delta"] == F.order and o["boomerang"] == F.order
        return out, _status(out)
    if F.is_in_f4(beta):
        if not _guard_ok(F, cfg):
            raise UsageError("beta in GF(4): closed forms do not apply and the oracle guard is exceeded")
        out.update(method="oracle", note="beta in GF(4): routed to the exhaustive oracle")
        out["oracle"] = _oracle_rank3(F, beta)
        return out, EXIT_OK
    t0 = time.perf_counter()
    validate = True if (witness and _guard_ok(F, cfg)) else False
    v = classify(Rank3Params(beta, F), witness=witness, validate=validate)
    out.update(v.as_dict())
    out["beta"] = _hex(beta)
    out["method"] = "closed_form"
    out["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    if oracle:
        if not _guard_ok(F, cfg):
            raise UsageError(f"--oracle needs n <= {cfg.oracle_guard}")
        o = _oracle_rank3(F, beta)
        out["oracle"] = o
        agree = o["delta"] == v.du and (o["boomerang"] == 6) == v.bu_is_six
        if v.witness is not None:
            agree = agree and v.witness.validated is not False
        out["agreement"] = agree
    return out, _status(out)


def _status(out: dict) -> int:
    return EXIT_DISAGREE if out.get("agreement") is False else EXIT_OK


def brute(F: GF2n, chain_text: str, cfg: RunConfig, full_tables: str | None = None) -> dict:
    try:
        ch = parse_chain(chain_text, F)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if not _guard_ok(F, cfg):
        raise UsageError(f"oracle refuses n={F.n} > {cfg.oracle_guard}; raise --oracle-guard")
    t0 = time.perf_counter()
    p = as_permutation(ch)
    d, dw = ddt_max(p, None)
    b, bw = bct_max(p, None)
    deg = algebraic_degree(p)
    res = {
        "n": F.n, "chain": format_chain(ch), "delta": d, "du_witness": _pair(dw),
        "boomerang": b, "bu_witness": _pair(bw), "algebraic_degree": deg,
        "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3),
    }
    if full_tables:
        if F.n > 12:
            raise UsageError("--full-tables is limited to n <= 12")
        np.savetxt(f"{full_tables}_ddt.csv", ddt_table(p, None), fmt="%d", delimiter=",")
        np.savetxt(f"{full_tables}_bct.csv", bct_table(p, None), fmt="%d", delimiter=",")
        res["tables"] = [f"{full_tables}_ddt.csv", f"{full_tables}_bct.csv"]
    return res


def involution_cmd(F: GF2n, beta: int, gamma: int, cfg: RunConfig, oracle: bool = False) -> tuple[dict, int]:
    if beta == 0:
        raise UsageError("beta must be nonzero")
    ch = make_involution(beta, gamma, F)
    out = {"n": F.n, "beta": _hex(beta), "gamma": _hex(gamma), "chain": format_chain(ch)}
    if F.n <= 20:
        t = ch.table
        out["is_involution"] = bool((t[t] == np.arange(F.order)).all())
    verdict, status = analyze(F, beta, cfg, oracle=False)
    out["equivalent_rank3"] = verdict
    if oracle:
        if not _guard_ok(F, cfg):
            raise UsageError(f"--oracle needs n <= {cfg.oracle_guard}")
        p = PermTable(ch.table, F)
        o = {"delta": ddt_max(p, None)[0], "boomerang": bct_max(p, None)[0]}
        out["oracle"] = o
        if "bu_is_six" in verdict:
            out["agreement"] = (o["boomerang"] == 6) == verdict["bu_is_six"] and o["delta"] == verdict["du"]
    if out.get("is_involution") is False:
        status = EXIT_DISAGREE
    return out, max(status, _status(out))


# -- output ----------------------------------------------------------------

def _emit(text: str, cfg: RunConfig):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_text(rows: list[SweepRow], fmt: str, timing: bool) -> str:
    dicts = [asdict(r) for r in rows]
    if not timing:
        for d in dicts:
            d["elapsed_ms"] = 0
    if fmt == "json":
        return json.dumps(dicts, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=["n", "count_bu6", "count_du4_bu6", "orbits", "elapsed_ms"],
                       lineterminator="\n")
    w.writeheader()
    w.writerows(dicts)
    return buf.getvalue()


# -- argument parsing ------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _hexint(s: str) -> int:
    return int(s, 16)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--modulus", type=_hexint, help="defining polynomial as hex bit-vector (default: Conway)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)
    common.add_argument("--out", help="write output to this path")
    common.add_argument("--oracle-guard", type=int, default=ORACLE_GUARD, help="largest n for brute force")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="carlitz-sbox", description="Carlitz-form permutations of GF(2^n) and their uniformities.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="closed-form verdict for [0,1,beta,x]")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--beta", required=True, help="hex or g^k")
    a.add_argument("--oracle", action="store_true", help="also run the brute-force oracle")
    a.add_argument("--witness", dest="witness", action="store_true", default=True,
                   help="construct a BU>=8 witness (default)")
    a.add_argument("--no-witness", dest="witness", action="store_false")

    b = sub.add_parser("brute", parents=[common], help="exhaustive DDT/BCT analysis of a chain")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--chain", required=True, help='e.g. "0,1,1d,x" or "[5,3,2+7*x]"')
    b.add_argument("--full-tables", metavar="PREFIX", help="write PREFIX_ddt.csv and PREFIX_bct.csv")

    s = sub.add_parser("sweep", parents=[common], help="reproduce the optimal-beta counts")
    s.add_argument("--n", type=int, nargs="+", default=list(DEFAULT_SWEEP_N))
    s.add_argument("--deep", action="store_true", help=f"allow n >= {DEEP_FROM}")
    s.add_argument("--no-timing", dest="timing", action="store_false",
                   help="report elapsed_ms as 0 for byte-stable output")

    i = sub.add_parser("involution", parents=[common], help="build [gamma,beta,beta,gamma+x]")
    i.add_argument("--n", type=int, required=True)
    i.add_argument("--beta", required=True)
    i.add_argument("--gamma", default="0")
    i.add_argument("--oracle", action="store_true")

    t = sub.add_parser("selftest", parents=[common], help="run the invariant suites")
    t.add_argument("--quick", action="store_true")
    t.add_argument("--only", nargs="*", help="names of checks to run")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except UsageError as e:
        print(f"carlitz-sbox: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def _dispatch(args) -> int:
    ns = args.n if isinstance(getattr(args, "n", None), list) else [getattr(args, "n", 8)]
    cfg = RunConfig(ns, args.modulus, args.jobs, args.fmt or ("csv" if args.cmd == "sweep" else "json"),
                    args.out, args.oracle_guard, args.seed)
    if args.cmd == "sweep":
        if args.modulus is not None and len(ns) > 1:
            raise UsageError("--modulus applies to a single n")
        for n in ns:
            if n >= DEEP_FROM and not args.deep:
                raise UsageError(f"n={n} needs --deep")
        rows = []
        for n in ns:
            F = cfg.field(n)
            if n % 2:
                print(f"note: n={n} is odd; no published reference row", file=sys.stderr)
            rows.append(sweep(n, F.modulus, cfg.jobs))
        _emit(_rows_text(rows, cfg.fmt, args.timing), cfg)
        return EXIT_OK
    if args.cmd == "selftest":
        from .selftest import run_selftest
        lines = []
        res = run_selftest(seed=cfg.seed, quick=args.quick, names=args.only, log=lines.append)
        if args.only and not res:
            raise UsageError("no such check")
        _emit("\n".join(lines) + "\n", cfg)
        return EXIT_OK if all(ok for ok, _, _ in res.values()) else EXIT_DISAGREE
    F = cfg.field()
    if args.cmd == "analyze":
        out, status = analyze(F, _parse_beta(F, args.beta), cfg, args.oracle, args.witness)
    elif args.cmd == "brute":
        out, status = brute(F, args.chain, cfg, args.full_tables), EXIT_OK
    elif args.cmd == "involution":
        out, status = involution_cmd(F, _parse_beta(F, args.beta), _parse_beta(F, args.gamma), cfg, args.oracle)
    else:  # pragma: no cover
        raise UsageError(f"unknown command {args.cmd}")
    _emit(json.dumps(out, indent=2) + "\n", cfg)
    return status


if __name__ == "__main__":
    sys.exit(main())
