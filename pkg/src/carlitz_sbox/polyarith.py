"""Univariate polynomials over GF(2^n): remainder, gcd, roots in the base field.

Only what root-existence tests need.  Coefficients are stored as field bit
values, lowest degree first; the zero polynomial has no coefficients.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .gf2n import FieldElement, FieldMismatchError, GF2n

# roots are extracted by scanning the field up to this degree
ROOT_SCAN_MAX = 20


@dataclass(frozen=True)
class FieldPoly:
    """Polynomial sum coeffs[i] * Z^i over `field`."""

    coeffs: tuple
    field: GF2n

    def __init__(self, coeffs: Iterable, field: GF2n):
        c = [field.bits(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "field", field)

    @classmethod
    def from_roots(cls, roots: Sequence, field: GF2n) -> FieldPoly:
        p = cls((1,), field)
        for r in roots:
            p = p * cls((field.bits(r), 1), field)
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def elements(self) -> tuple:
        return tuple(FieldElement(c, self.field) for c in self.coeffs)

    def lead(self) -> int:
        return self.coeffs[-1]

    def _check(self, other: FieldPoly):
        if self.field != other.field:
            raise FieldMismatchError("polynomials over different fields")

    def __add__(self, other: FieldPoly) -> FieldPoly:
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return FieldPoly([x ^ (b[i] if i < len(b) else 0) for i, x in enumerate(a)], self.field)

    __sub__ = __add__

    def __mul__(self, other: FieldPoly) -> FieldPoly:
        self._check(other)
        F = self.field
        if self.is_zero() or other.is_zero():
            return FieldPoly((), F)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] ^= F.mul(x, y)
        return FieldPoly(out, F)

    def scale(self, c) -> FieldPoly:
        c = self.field.bits(c)
        return FieldPoly([self.field.mul(c, x) for x in self.coeffs], self.field)

    def monic(self) -> FieldPoly:
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lead()))

    def __call__(self, x):
        """Evaluate at a field element (Horner)."""
        F = self.field
        xb = F.bits(x)
        r = 0
        for c in reversed(self.coeffs):
            r = F.mul(r, xb) ^ c
        return FieldElement(r, F) if isinstance(x, FieldElement) else r

    def eval_all(self) -> np.ndarray:
        """Values at every field element, as an array indexed by bit value."""
        F = self.field
        xs = np.arange(F.order, dtype=np.int64)
        r = np.zeros(F.order, dtype=np.int64)
        for c in reversed(self.coeffs):
            r = F.vmul(r, xs) ^ c
        return r

    def __str__(self):
        return format_poly(self)


def poly_divmod(f: FieldPoly, g: FieldPoly) -> tuple[FieldPoly, FieldPoly]:
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    F = f.field
    r = list(f.coeffs)
    dg = g.degree
    q = [0] * max(len(r) - dg, 0)
    inv_lead = F.inv(g.lead())
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if not c:
            continue
        t = F.mul(c, inv_lead)
        q[k - dg] = t
        for j, gc in enumerate(g.coeffs):
            r[k - dg + j] ^= F.mul(t, gc)
    return FieldPoly(q, F), FieldPoly(r[:dg], F)


def poly_mod(f: FieldPoly, g: FieldPoly) -> FieldPoly:
    return poly_divmod(f, g)[1]


def poly_gcd(f: FieldPoly, g: FieldPoly) -> FieldPoly:
    """Monic gcd; raises if both inputs are zero."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero polynomials")
    while not g.is_zero():
        f, g = g, poly_mod(f, g)
    return f.monic()


def _mulmod_poly(a: FieldPoly, b: FieldPoly, f: FieldPoly) -> FieldPoly:
    return poly_mod(a * b, f)


def frobenius_power_mod(f: FieldPoly) -> FieldPoly:
    """Z^(2^n) mod f by n successive squarings."""
    if f.degree < 1:
        raise ValueError("frobenius_power_mod needs a non-constant modulus")
    F = f.field
    r = poly_mod(FieldPoly((0, 1), F), f)
    for _ in range(F.n):
        r = _mulmod_poly(r, r, f)
    return r


def split_part(f: FieldPoly) -> FieldPoly:
    """gcd(f, Z^(2^n) - Z): the product of the distinct linear factors of f."""
    if f.degree < 1:
        raise ValueError("root finding needs a non-constant polynomial")
    if f.degree == 1:
        return f.monic()
    x = FieldPoly((0, 1), f.field)
    return poly_gcd(f, frobenius_power_mod(f) + x)


def has_root_in_field(f: FieldPoly) -> bool:
    return split_part(f).degree >= 1


def _trace_poly_mod(u: int, s: FieldPoly) -> FieldPoly:
    # sum_{i<n} (uZ)^(2^i) mod s
    F = s.field
    t = poly_mod(FieldPoly((0, u), F), s)
    acc = t
    for _ in range(F.n - 1):
        t = _mulmod_poly(t, t, s)
        acc = acc + t
    return acc


def _split_roots(s: FieldPoly, rng: random.Random) -> list[int]:
    # s is monic, squarefree, and splits into linear factors
    F = s.field
    if s.degree == 0:
        return []
    if s.degree == 1:
        return [s.coeffs[0]]
    while True:
        u = rng.randrange(1, F.order)
        d = poly_gcd(s, _trace_poly_mod(u, s))
        if 0 < d.degree < s.degree:
            return _split_roots(d, rng) + _split_roots(poly_divmod(s, d)[0].monic(), rng)


def roots_in_field(f: FieldPoly, method: str = "auto") -> set:
    """All distinct roots of f in the field.

    method: "scan" evaluates the split part everywhere, "split" uses trace
    splitting; "auto" scans for n <= ROOT_SCAN_MAX.
    """
    s = split_part(f)
    F = f.field
    if method == "auto":
        method = "scan" if F.n <= ROOT_SCAN_MAX else "split"
    if s.degree < 1:
        found: list[int] = []
    elif s.degree == 1:
        found = [s.coeffs[0]]
    elif method == "scan":
        found = np.flatnonzero(s.eval_all() == 0).tolist()
    elif method == "split":
        found = _split_roots(s, random.Random(0))
    else:
        raise ValueError(f"unknown root method {method!r}")
    return {FieldElement(int(r), F) for r in found}


def resultant_quadratics(f: FieldPoly, g: FieldPoly) -> FieldElement:
    """Sylvester resultant of two quadratics (4x4 determinant)."""
    f._check(g)
    if f.degree != 2 or g.degree != 2:
        raise ValueError("resultant_quadratics needs two degree-2 polynomials")
    F = f.field
    # columns ordered leading coefficient first
    f0, f1, f2 = f.coeffs[2], f.coeffs[1], f.coeffs[0]
    g0, g1, g2 = g.coeffs[2], g.coeffs[1], g.coeffs[0]
    M = [
        [f0, 0, g0, 0],
        [f1, f0, g1, g0],
        [f2, f1, g2, g1],
        [0, f2, 0, g2],
    ]
    return FieldElement(det(M, F), F)


def det(M: list[list[int]], F: GF2n) -> int:
    """Determinant over GF(2^n) by Gaussian elimination (signs vanish)."""
    A = [row[:] for row in M]
    k = len(A)
    d = 1
    for col in range(k):
        piv = next((r for r in range(col, k) if A[r][col]), None)
        if piv is None:
            return 0
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        d = F.mul(d, p)
        ip = F.inv(p)
        for r in range(col + 1, k):
            if A[r][col]:
                t = F.mul(A[r][col], ip)
                A[r] = [x ^ F.mul(t, y) for x, y in zip(A[r], A[col])]
    return d


def parse_poly(text: str, field: GF2n) -> FieldPoly:
    """Comma-separated hex coefficients, lowest degree first."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    return FieldPoly([int(p, 16) for p in parts], field)


def format_poly(f: FieldPoly) -> str:
    return ",".join(format(c, "x") for c in f.coeffs) if f.coeffs else "0"
