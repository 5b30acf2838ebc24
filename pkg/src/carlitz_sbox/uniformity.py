"""Exhaustive differential and boomerang oracles for permutations of GF(2^n).

Conventions for a permutation table G:

    ddt(a, b) = #{x : G(x) + G(x + a) = b}
    du_G(a, b) = #{(x, y) : G(x) + G(y) = a, x + y = b}          (= ddt_G(b, a))
    bu_G(a, c) = #{(x, y) : G(x) + G(y) = a = G(x + c) + G(y + c)}
    bct_F(a, b) = #{x : F^-1(F(x) + b) + F^-1(F(x + a) + b) = a} (= bu_{F^-1}(a, b))

Pairs are ordered, so all counts are even.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable

import numpy as np

from .gf2n import GF2n

# oracles refuse larger fields unless the guard is lifted
ORACLE_GUARD = 14
# full tables are only materialized up to this degree
FULL_TABLE_MAX = 12
# work arrays hold about this many entries
_CHUNK_ENTRIES = 1 << 20


class PermTable:
    """A permutation of GF(2^n) as a lookup table indexed by bit value."""

    def __init__(self, forward, field: GF2n, check: bool = True):
        f = np.asarray(forward, dtype=np.int64)
        if f.shape != (field.order,):
            raise ValueError(f"table of length {f.size} for a field of order {field.order}")
        if check and np.unique(f).size != f.size:
            raise ValueError("table is not a bijection")
        f.setflags(write=False)
        self.forward = f
        self.field = field

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.empty_like(self.forward)
        inv[self.forward] = np.arange(self.field.order, dtype=np.int64)
        inv.setflags(write=False)
        return inv

    @property
    def inverse_perm(self) -> PermTable:
        return PermTable(self.inverse, self.field, check=False)

    def __len__(self):
        return self.field.order

    def __getitem__(self, x):
        return self.forward[x]

    def compose(self, other: PermTable) -> PermTable:
        """self o other."""
        return PermTable(self.forward[other.forward], self.field, check=False)

    def is_involution(self) -> bool:
        return bool((self.forward[self.forward] == np.arange(self.field.order)).all())

    def __eq__(self, other):
        return isinstance(other, PermTable) and self.field == other.field and \
            bool((self.forward == other.forward).all())

    __hash__ = None


def _check_guard(p: PermTable, guard: int | None):
    if guard is not None and p.field.n > guard:
        raise ValueError(f"oracle for n={p.field.n} exceeds guard n<={guard}")


def _row_chunks(N: int, start: int = 1) -> Iterable[np.ndarray]:
    step = max(1, _CHUNK_ENTRIES // N)
    for lo in range(start, N, step):
        yield np.arange(lo, min(N, lo + step), dtype=np.int64)


# -- DDT ---------------------------------------------------------------------

def _ddt_rows(p: PermTable, rows: np.ndarray) -> np.ndarray:
    N = p.field.order
    xs = np.arange(N, dtype=np.int64)
    G = p.forward
    out = G[xs][None, :] ^ G[xs[None, :] ^ rows[:, None]]
    flat = out + (np.arange(rows.size, dtype=np.int64) * N)[:, None]
    return np.bincount(flat.ravel(), minlength=rows.size * N).reshape(rows.size, N)


def ddt_table(p: PermTable, guard: int | None = FULL_TABLE_MAX) -> np.ndarray:
    _check_guard(p, guard)
    N = p.field.order
    T = np.zeros((N, N), dtype=np.int64)
    T[0, 0] = N
    for rows in _row_chunks(N):
        T[rows] = _ddt_rows(p, rows)
    return T


def ddt_max(p: PermTable, guard: int | None = ORACLE_GUARD) -> tuple[int, tuple[int, int]]:
    """Differential uniformity and the first (a, b) attaining it."""
    _check_guard(p, guard)
    best, wit = -1, (0, 0)
    for rows in _row_chunks(p.field.order):
        T = _ddt_rows(p, rows)
        k = int(T.argmax())
        r, b = divmod(k, T.shape[1])
        if T[r, b] > best:
            best, wit = int(T[r, b]), (int(rows[r]), int(b))
    return best, wit


# -- boomerang ---------------------------------------------------------------

def _bu_rows(p: PermTable, cs: np.ndarray) -> np.ndarray:
    """bu_G(a, c) for the given c values; result indexed [row of c, a]."""
    N = p.field.order
    G = p.forward
    xs = np.arange(N, dtype=np.int64)
    W = G[None, :] ^ G[xs[None, :] ^ cs[:, None]]
    order = np.argsort(W, axis=1, kind="stable")
    Ws = np.take_along_axis(W, order, axis=1)
    counts = np.zeros(cs.size * N, dtype=np.int64)
    k = 1
    while k < N:
        eq = Ws[:, k:] == Ws[:, :-k]
        r, j = np.nonzero(eq)
        if r.size == 0:
            break
        a = G[order[r, j]] ^ G[order[r, j + k]]
        counts += 2 * np.bincount(r * N + a, minlength=cs.size * N)
        k += 1
    return counts.reshape(cs.size, N)


def bu_table(g: PermTable, guard: int | None = FULL_TABLE_MAX) -> np.ndarray:
    """Matrix of bu_G(a, c), indexed [a, c]."""
    _check_guard(g, guard)
    N = g.field.order
    T = np.zeros((N, N), dtype=np.int64)
    for cs in _row_chunks(N):
        T[:, cs] = _bu_rows(g, cs).T
    T[0, :] = N
    T[:, 0] = N
    return T


def bu_max(g: PermTable, guard: int | None = ORACLE_GUARD) -> tuple[int, tuple[int, int]]:
    """max over a, c != 0 of bu_G(a, c) with a witness (a, c)."""
    _check_guard(g, guard)
    best, wit = -1, (0, 0)
    for cs in _row_chunks(g.field.order):
        T = _bu_rows(g, cs)
        T[:, 0] = -1
        k = int(T.argmax())
        r, a = divmod(k, T.shape[1])
        if T[r, a] > best:
            best, wit = int(T[r, a]), (int(a), int(cs[r]))
    return best, wit


def bct_table(p: PermTable, guard: int | None = FULL_TABLE_MAX) -> np.ndarray:
    """Boomerang connectivity table of p, indexed [a, b]."""
    return bu_table(p.inverse_perm, guard)


def bct_table_literal(p: PermTable, guard: int | None = 8) -> np.ndarray:
    """BCT straight from the definition; slow, for cross-checks."""
    _check_guard(p, guard)
    N = p.field.order
    F, Fi = p.forward, p.inverse
    xs = np.arange(N, dtype=np.int64)
    T = np.zeros((N, N), dtype=np.int64)
    for a in range(N):
        for b in range(N):
            lhs = Fi[F[xs] ^ b] ^ Fi[F[xs ^ a] ^ b]
            T[a, b] = int((lhs == a).sum())
    return T


def bct_max(p: PermTable, guard: int | None = ORACLE_GUARD) -> tuple[int, tuple[int, int]]:
    """Boomerang uniformity of p and a witness (a, b) of its BCT."""
    return bu_max(p.inverse_perm, guard)


# -- pointwise counts ----------------------------------------------------------

def _nonzero(*vals):
    if any(int(v) == 0 for v in vals):
        raise ValueError("pointwise counts need nonzero arguments")


def du_pairs(g: PermTable, a: int, b: int) -> list[tuple[int, int]]:
    """Ordered pairs (x, x + b) with G(x) + G(x + b) = a."""
    a, b = int(a), int(b)
    _nonzero(a, b)
    G = g.forward
    xs = np.arange(g.field.order, dtype=np.int64)
    hits = np.flatnonzero((G ^ G[xs ^ b]) == a)
    return [(int(x), int(x) ^ b) for x in hits]


def du_point(g: PermTable, a, b) -> int:
    a, b = int(a), int(b)
    _nonzero(a, b)
    G = g.forward
    xs = np.arange(g.field.order, dtype=np.int64)
    return int(((G ^ G[xs ^ b]) == a).sum())


def bu_point(g: PermTable, a, c) -> int:
    a, c = int(a), int(c)
    _nonzero(a, c)
    G, Gi = g.forward, g.inverse
    xs = np.arange(g.field.order, dtype=np.int64)
    ys = Gi[G ^ a]
    return int(((G[xs ^ c] ^ G[ys ^ c]) == a).sum())


def classify_solutions(g: PermTable, poles, a, b) -> tuple[int, int, int]:
    """Split the ordered du solutions by how many coordinates are poles."""
    P = {int(p) for p in poles}
    cnt = [0, 0, 0]
    for x, y in du_pairs(g, a, b):
        k = (x in P) + (y in P)
        cnt[2 - k] += 1
    return cnt[0], cnt[1], cnt[2]


# -- algebraic degree ----------------------------------------------------------

def algebraic_degree(p: PermTable) -> int:
    """Max degree of the output coordinate functions (binary Moebius transform)."""
    n = p.field.n
    f = np.array(p.forward, dtype=np.int64)
    for i in range(n):
        v = f.reshape(-1, 2, 1 << i)
        v[:, 1, :] ^= v[:, 0, :]
    idx = np.flatnonzero(f)
    if idx.size == 0:
        return 0
    w = np.zeros(idx.size, dtype=np.int64)
    for i in range(n):
        w += (idx >> i) & 1
    return int(w.max())


# -- reports -------------------------------------------------------------------

@dataclass
class UniformityReport:
    delta: int
    boomerang: int | None
    du_witness: tuple | None = None
    bu_witness: tuple | None = None
    method: str = "oracle"
    elapsed: float = 0.0
    algebraic_degree: int | None = None
    extra: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.boomerang is not None and self.delta > self.boomerang:
            raise AssertionError(f"differential {self.delta} exceeds boomerang {self.boomerang}")

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "du_witness": list(self.du_witness) if self.du_witness else None,
            "boomerang": self.boomerang,
            "bu_witness": list(self.bu_witness) if self.bu_witness else None,
            "algebraic_degree": self.algebraic_degree,
            "method": self.method,
            "elapsed_ms": round(self.elapsed * 1000, 3),
        }


def analyze_table(p: PermTable, degree: bool = True, guard: int | None = ORACLE_GUARD) -> UniformityReport:
    """Brute-force differential and boomerang uniformity of p.

    Witnesses are (a, b) of the DDT and (a, b) of the BCT of p.
    """
    t0 = time.perf_counter()
    d, dw = ddt_max(p, guard)
    b, bw = bct_max(p, guard)
    deg = algebraic_degree(p) if degree else None
    return UniformityReport(d, b, dw, bw, "oracle", time.perf_counter() - t0, deg)
