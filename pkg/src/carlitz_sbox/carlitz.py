"""Carlitz chains over GF(2^n).

A chain a_0, ..., a_{m+1} defines

    F(x) = [a_{m+1}, a_m, ..., a_2, a_1 + a_0 x]

where [b_1, ..., b_s] = b_1 + inv(b_2 + inv(... + inv(b_s))) and inv is
x -> x^(q-2).  The chain length m bounds the Carlitz rank from above; we do
not try to minimize it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Sequence

import numpy as np

from .gf2n import FieldElement, GF2n

# as_permutation refuses larger fields unless told otherwise
TABLE_GUARD = 20


def _bits(F: GF2n, v) -> int:
    return F.bits(v)


def bracket_eval(entries: Sequence, field: GF2n | None = None):
    """Evaluate [b_1, ..., b_s] by a right fold with x^(q-2).

    Accepts FieldElements (returns a FieldElement) or ints with `field`.
    """
    if not entries:
        raise ValueError("bracket of an empty sequence")
    wrap = field is None
    if field is None:
        field = entries[0].field
    vals = [field.bits(e) for e in entries]
    r = vals[-1]
    for v in reversed(vals[:-1]):
        r = field.inv(r) ^ v
    return FieldElement(r, field) if wrap else r


@dataclass(frozen=True)
class CarlitzChain:
    """Coefficients a_0, ..., a_{m+1} as field bit values."""

    coeffs: tuple
    field: GF2n

    def __init__(self, coeffs: Sequence, field: GF2n):
        c = tuple(field.bits(v) for v in coeffs)
        if len(c) < 2:
            raise ValueError("a chain needs at least a_0 and a_1")
        if c[0] == 0:
            raise ValueError("a_0 must be nonzero")
        m = len(c) - 2
        for i in range(2, m + 1):
            if c[i] == 0:
                raise ValueError(f"interior coefficient a_{i} must be nonzero")
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "field", field)

    @classmethod
    def from_entries(cls, constants: Sequence, a1, a0, field: GF2n) -> CarlitzChain:
        """Build from the bracket layout [a_{m+1}, ..., a_2, a_1 + a_0 x]."""
        return cls([a0, a1, *reversed(list(constants))], field)

    @property
    def m(self) -> int:
        return len(self.coeffs) - 2

    def a(self, i: int) -> int:
        return self.coeffs[i]

    @property
    def constants(self) -> tuple:
        """The constant bracket entries a_{m+1}, ..., a_2."""
        return tuple(reversed(self.coeffs[2:]))

    def __call__(self, x):
        return eval_chain(self, x)

    def __str__(self):
        return format_chain(self)

    def is_standard(self) -> bool:
        # [0, a_m, ..., a_3, 1, x]
        c = self.coeffs
        if self.m == 1:
            return c == (1, 0, 0)
        return self.m >= 2 and c[0] == 1 and c[1] == 0 and c[2] == 1 and c[-1] == 0

    @cached_property
    def table(self) -> np.ndarray:
        return chain_table(self)


def eval_chain(chain: CarlitzChain, x):
    F = chain.field
    xb = F.bits(x)
    c = chain.coeffs
    r = F.mul(c[0], xb) ^ c[1]
    for k in range(2, len(c)):
        r = F.inv(r) ^ c[k]
    return FieldElement(r, F) if isinstance(x, FieldElement) else r


def chain_table(chain: CarlitzChain, guard: int | None = TABLE_GUARD) -> np.ndarray:
    """Values of the chain at every field element, indexed by bit value."""
    F = chain.field
    if guard is not None and F.n > guard:
        raise ValueError(f"table for n={F.n} exceeds guard n<={guard}")
    c = chain.coeffs
    r = F.vmul(np.arange(F.order, dtype=np.int64), c[0]) ^ c[1]
    for k in range(2, len(c)):
        r = F.vinv(r) ^ c[k]
    return r


def as_permutation(chain: CarlitzChain, guard: int | None = TABLE_GUARD):
    from .uniformity import PermTable

    t = chain_table(chain, guard)
    if np.unique(t).size != t.size:
        raise AssertionError("chain table is not a bijection")
    return PermTable(t, chain.field)


# -- convergents and poles ---------------------------------------------------

@dataclass(frozen=True)
class Convergents:
    alphas: tuple
    betas: tuple
    field: GF2n

    def K(self, i: int, j: int) -> int:
        F = self.field
        return F.mul(self.alphas[i], self.betas[j]) ^ F.mul(self.alphas[j], self.betas[i])

    def ratio(self, i: int) -> int | None:
        """beta_i / alpha_i, or None when alpha_i = 0."""
        if self.alphas[i] == 0:
            return None
        return self.field.div(self.betas[i], self.alphas[i])


def convergents(chain: CarlitzChain) -> Convergents:
    F = chain.field
    a = chain.coeffs
    al = [0, a[0]]
    be = [1, a[1]]
    for k in range(1, chain.m + 1):
        al.append(F.mul(a[k + 1], al[k]) ^ al[k - 1])
        be.append(F.mul(a[k + 1], be[k]) ^ be[k - 1])
    return Convergents(tuple(al), tuple(be), F)


def rational_form(chain: CarlitzChain, x: int, conv: Convergents | None = None) -> int:
    """(alpha_{m+1} x + beta_{m+1}) * inv(alpha_m x + beta_m); equals F(x) off the poles."""
    F = chain.field
    conv = conv or convergents(chain)
    m = chain.m
    num = F.mul(conv.alphas[m + 1], x) ^ conv.betas[m + 1]
    den = F.mul(conv.alphas[m], x) ^ conv.betas[m]
    return F.mul(num, F.inv(den))


def _partition(indices, same) -> list[list[int]]:
    classes: list[list[int]] = []
    for i in indices:
        for cl in classes:
            if same(cl[0], i):
                cl.append(i)
                break
        else:
            classes.append([i])
    return classes


@dataclass(frozen=True)
class PoleData:
    a_values: tuple            # A_1..A_{m+1}; a_values[i-1] = A_i
    poles: tuple               # distinct A_1..A_m, in order of first index
    pole_index: tuple          # the minimal index i of each pole
    exceptions: dict = dc_field(hash=False)  # pole -> F(pole)
    sim_partition: tuple = ()
    approx_partition: tuple = ()

    def A(self, i: int) -> int:
        return self.a_values[i - 1]


def pole_data(chain: CarlitzChain) -> PoleData:
    F = chain.field
    a = chain.coeffs
    m = chain.m
    inv_a0 = F.inv(a[0])
    A = tuple(F.mul(inv_a0, bracket_eval(a[1 : i + 1], F)) for i in range(1, m + 2))
    poles, idx, exc = [], [], {}
    for i in range(1, m + 1):
        p = A[i - 1]
        if p not in exc:
            poles.append(p)
            idx.append(i)
            # F(A_i) = [a_{m+1}, ..., a_{i+1}]
            exc[p] = bracket_eval(a[m + 1 : i : -1], F)
    conv = convergents(chain)
    sim = _partition(range(1, m + 2), lambda i, j: A[i - 1] == A[j - 1])
    approx = _partition(range(0, m + 2), lambda i, j: conv.K(i, j) == 0)
    return PoleData(
        A, tuple(poles), tuple(idx), exc,
        tuple(tuple(c) for c in sim), tuple(tuple(c) for c in approx),
    )


# -- transformations -----------------------------------------------------------

def reduce_to_standard(chain: CarlitzChain) -> CarlitzChain:
    """An affine-equivalent chain of the form [0, b_m, ..., b_3, 1, x].

    b_i = a_2^((-1)^(i+1)) a_i.  Chains with m = 1 reduce to [0, x]; m = 0 is
    affine and has no such form.
    """
    F = chain.field
    m = chain.m
    if m == 0:
        raise ValueError("an affine chain (m = 0) has no standard form")
    if m == 1:
        return CarlitzChain((1, 0, 0), F)
    a = chain.coeffs
    a2, ia2 = a[2], F.inv(a[2])
    b = [F.mul(a2 if i % 2 else ia2, a[i]) for i in range(3, m + 1)]
    return CarlitzChain((1, 0, 1, *b, 0), F)


def inverse_chain(std: CarlitzChain) -> CarlitzChain:
    """Compositional inverse of a standard chain: reverse a_3..a_m around the ends."""
    if not std.is_standard():
        raise ValueError("inverse_chain expects a standard chain [0, a_m, ..., a_3, 1, x]")
    if std.m <= 2:
        return std
    c = std.coeffs
    middle = c[3 : std.m + 1]  # a_3..a_m
    return CarlitzChain((1, 0, *reversed(middle), 1, 0), std.field)


@dataclass(frozen=True)
class AffineMap:
    """x -> slope * x + offset."""

    slope: int
    offset: int
    field: GF2n

    def __call__(self, x: int) -> int:
        return self.field.mul(self.slope, x) ^ self.offset

    def table(self) -> np.ndarray:
        F = self.field
        return F.vmul(np.arange(F.order, dtype=np.int64), self.slope) ^ self.offset


@dataclass(frozen=True)
class Linearization:
    """Affine maps turning a chain into the inverse function or the identity off `exceptional`.

    fractional: l2(F(l1(x))) = inv(x) for x outside `exceptional`.
    affine:     l(F(x)) = x for x outside `exceptional` (only `l1` is set).
    """

    case: str
    l1: AffineMap
    l2: AffineMap | None
    exceptional: frozenset


def linearize(chain: CarlitzChain) -> Linearization:
    F = chain.field
    m = chain.m
    conv = convergents(chain)
    al, be = conv.alphas, conv.betas
    a0 = chain.coeffs[0]
    A = pole_data(chain).a_values[:m]
    if al[m] != 0:
        ia = F.inv(al[m])
        l1 = AffineMap(F.mul(a0, ia), F.mul(be[m], ia), F)
        l2 = AffineMap(al[m], al[m + 1], F)
        ia0 = F.inv(a0)
        P = frozenset(F.mul(F.mul(al[m], Ai) ^ be[m], ia0) for Ai in A)
        return Linearization("fractional", l1, l2, P)
    ia = F.inv(al[m + 1])
    ell = AffineMap(F.mul(be[m], ia), F.mul(be[m + 1], ia), F)
    return Linearization("affine", ell, None, frozenset(A))


def _collapse(constants: list[int], lin: tuple[int, int]):
    # [.., y, 0, z, ..] = [.., y + z, ..] since inv is an involution
    consts = list(constants)
    a1, a0 = lin
    changed = True
    while changed:
        changed = False
        for i in range(1, len(consts)):
            if consts[i] == 0:
                if i + 1 < len(consts):
                    consts[i - 1 : i + 2] = [consts[i - 1] ^ consts[i + 1]]
                else:
                    a1 ^= consts[i - 1]
                    consts = consts[: i - 1]
                changed = True
                break
    return consts, (a1, a0)


def compose_chains(f: CarlitzChain, h: CarlitzChain) -> CarlitzChain:
    """A chain for f(h(x))."""
    F = f.field
    fe = list(f.constants)
    f1, f0 = f.coeffs[1], f.coeffs[0]
    he = list(h.constants)
    h1, h0 = h.coeffs[1], h.coeffs[0]
    if not he:
        consts, lin = fe, (f1 ^ F.mul(f0, h1), F.mul(f0, h0))
    else:
        consts = fe + [f1 ^ F.mul(f0, he[0])]
        scales = (F.inv(f0), f0)
        for j in range(1, len(he)):
            consts.append(F.mul(scales[(j - 1) % 2], he[j]))
        s = scales[(len(he) - 1) % 2]
        lin = (F.mul(s, h1), F.mul(s, h0))
    consts, (a1, a0) = _collapse(consts, lin)
    return CarlitzChain.from_entries(consts, a1, a0, F)


def invert_after(chain: CarlitzChain) -> CarlitzChain:
    """A chain for inv(chain(x))."""
    consts, (a1, a0) = _collapse([0, *chain.constants], (chain.coeffs[1], chain.coeffs[0]))
    return CarlitzChain.from_entries(consts, a1, a0, chain.field)


def transposition_gadget(c, field: GF2n) -> CarlitzChain:
    """[0, 1/c, c, 1/c + x/c^2], which swaps 0 and c."""
    cb = field.bits(c)
    if cb == 0:
        raise ValueError("gadget needs c != 0")
    ic = field.inv(cb)
    return CarlitzChain.from_entries([0, ic, cb], ic, field.sqr(ic), field)


def cycle_to_chain(cycle: Sequence, field: GF2n | None = None) -> CarlitzChain:
    """A chain realizing inv(pi(x)) for the cycle pi: c_1 -> c_2 -> ... -> c_k -> c_1."""
    if field is None:
        field = cycle[0].field
    cs = [field.bits(c) for c in cycle]
    if len(cs) < 2:
        raise ValueError("a cycle needs at least two elements")
    if len(set(cs)) != len(cs):
        raise ValueError("cycle entries must be distinct")
    if 0 in cs:
        z = cs.index(0)
        cs = cs[z:] + cs[:z]
        # pi = f_{c_k} o ... o f_{c_2}
        order = cs[1:]
    else:
        # pi = f_{c_1} o f_{c_k} o ... o f_{c_2} o f_{c_1}
        order = [cs[0], *cs[1:], cs[0]]
    pi = transposition_gadget(order[0], field)
    for c in order[1:]:
        pi = compose_chains(transposition_gadget(c, field), pi)
    return invert_after(pi)


def make_involution(beta, gamma, field: GF2n | None = None) -> CarlitzChain:
    """The palindromic chain [gamma, beta, beta, gamma + x]."""
    if field is None:
        field = beta.field
    b, g = field.bits(beta), field.bits(gamma)
    if b == 0:
        raise ValueError("beta must be nonzero")
    return CarlitzChain((1, g, b, b, g), field)


def rank3_chain(beta, field: GF2n | None = None) -> CarlitzChain:
    """[0, 1, beta, x]."""
    if field is None:
        field = beta.field
    b = field.bits(beta)
    if b == 0:
        raise ValueError("beta must be nonzero")
    return CarlitzChain((1, 0, b, 1, 0), field)


# -- text format ---------------------------------------------------------------

_LIN = re.compile(r"^(?:(?P<a1>[0-9a-f]+|g\^-?\d+)\+)?(?:(?P<a0>[0-9a-f]+|g\^-?\d+)\*)?x$")


def parse_chain(text: str, field: GF2n) -> CarlitzChain:
    """Parse "[a_{m+1},...,a_2,a_1+a_0*x]"; entries are hex or g^k, a bare x means a_1=0, a_0=1."""
    s = text.strip().lower().replace(" ", "")
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    parts = s.split(",")
    mt = _LIN.match(parts[-1])
    if not mt:
        raise ValueError(f"last chain entry {parts[-1]!r} must look like a1+a0*x")
    a1 = field.parse(mt["a1"]).bits if mt["a1"] else 0
    a0 = field.parse(mt["a0"]).bits if mt["a0"] else 1
    consts = [field.parse(p).bits for p in parts[:-1]]
    return CarlitzChain.from_entries(consts, a1, a0, field)


def format_chain(chain: CarlitzChain) -> str:
    a1, a0 = chain.coeffs[1], chain.coeffs[0]
    last = "x" if a0 == 1 else f"{a0:x}*x"
    if a1:
        last = f"{a1:x}+{last}"
    return "[" + ",".join([*(format(c, "x") for c in chain.constants), last]) + "]"
