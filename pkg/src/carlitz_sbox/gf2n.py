"""Arithmetic in GF(2^n), 2 <= n <= 24, in a fixed polynomial basis.

Elements are n-bit integers: bit i is the coefficient of g^i, where g is the
class of X modulo the defining polynomial.  `GF2n` exposes integer-level
operations (fast path used by the rest of the package) and wraps values in
`FieldElement` for operator-style arithmetic.
"""

from __future__ import annotations

import math
from functools import cached_property, lru_cache

import numpy as np

# Conway polynomials over GF(2), bit i = coefficient of X^i.
CONWAY = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x5B,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x46F,
    11: 0x805,
    12: 0x10EB,
    13: 0x201B,
    14: 0x40A9,
    15: 0x8035,
    16: 0x1002D,
    17: 0x20009,
    18: 0x41403,
    19: 0x80027,
    20: 0x1006F3,
    21: 0x200065,
    22: 0x401F61,
    23: 0x800021,
    24: 0x101E6A9,
}

MIN_DEGREE = 2
MAX_DEGREE = 24
# log/exp tables for scalar arithmetic up to this degree; above it, shift-and-reduce
SCALAR_TABLE_MAX = 16
# numpy tables for vectorized arithmetic up to this degree
VECTOR_TABLE_MAX = 20


class FieldMismatchError(ValueError):
    """Raised when combining elements of different fields."""


# -- carry-less polynomial helpers over GF(2) (ints as bit-vectors) ----------

def clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def pmod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, pmod(a, b)
    return a


def _mulmod(a: int, b: int, m: int, n: int) -> int:
    r = 0
    top = 1 << n
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= m
    return r


def _prime_factors(N: int) -> list[int]:
    out = []
    d = 2
    while d * d <= N:
        if N % d == 0:
            out.append(d)
            while N % d == 0:
                N //= d
        d += 1 if d == 2 else 2
    if N > 1:
        out.append(N)
    return out


def is_irreducible(m: int) -> bool:
    """Rabin's irreducibility test for a GF(2) polynomial given as bit-vector."""
    n = m.bit_length() - 1
    if n < 1:
        return False

    def x_pow_2k(k):
        # X^(2^k) mod m
        r = 0b10
        for _ in range(k):
            r = pmod(clmul(r, r), m)
        return r

    if x_pow_2k(n) != pmod(0b10, m):
        return False
    for p in _prime_factors(n):
        if pgcd(m, x_pow_2k(n // p) ^ 0b10) != 1:
            return False
    return True


# -- the field ---------------------------------------------------------------

class GF2n:
    """The field GF(2^n) defined by an irreducible `modulus`.

    Defaults to the Conway polynomial, whose root is primitive.  Instances
    are immutable; use `get_field` for a shared cached instance.
    """

    def __init__(self, n: int, modulus: int | None = None):
        if not MIN_DEGREE <= n <= MAX_DEGREE:
            raise ValueError(f"degree n={n} outside {MIN_DEGREE}..{MAX_DEGREE}")
        if modulus is None:
            modulus = CONWAY[n]
        if modulus.bit_length() - 1 != n:
            raise ValueError(f"modulus {modulus:#x} does not have degree {n}")
        if not is_irreducible(modulus):
            raise ValueError(f"modulus {modulus:#x} is not irreducible over GF(2)")
        self.n = n
        self.modulus = modulus
        self.order = 1 << n
        self.mask = self.order - 1
        self._group_factors = _prime_factors(self.order - 1)
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self.generator_bits = self._find_generator()
        if n <= SCALAR_TABLE_MAX:
            self._exp, self._log = self._build_tables_list()
        # trace is linear: Tr(a) = parity(a & trace_mask)
        self.trace_mask = sum(
            self._slow_trace(1 << i) << i for i in range(n)
        )

    # construction helpers
    def _is_primitive(self, g: int) -> bool:
        N = self.order - 1
        if g == 0 or self._pow_slow(g, N) != 1:
            return False
        return all(self._pow_slow(g, N // p) != 1 for p in self._group_factors)

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = _mulmod(r, a, self.modulus, self.n)
            a = _mulmod(a, a, self.modulus, self.n)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        for g in range(2, self.order):
            if self._is_primitive(g):
                return g
        raise AssertionError("no primitive element")  # unreachable for a field

    def _build_tables_list(self):
        N = self.order - 1
        exp = [0] * (2 * N)
        log = [0] * self.order
        x = 1
        g = self.generator_bits
        for k in range(N):
            exp[k] = x
            log[x] = k
            x = _mulmod(x, g, self.modulus, self.n)
        exp[N:] = exp[:N]
        return exp, log

    def _slow_trace(self, a: int) -> int:
        t, x = 0, a
        for _ in range(self.n):
            t ^= x
            x = _mulmod(x, x, self.modulus, self.n)
        assert t in (0, 1)
        return t

    # identity / pickling
    def __eq__(self, other):
        return isinstance(other, GF2n) and (self.n, self.modulus) == (other.n, other.modulus)

    def __hash__(self):
        return hash((self.n, self.modulus))

    def __repr__(self):
        return f"GF2n(n={self.n}, modulus={self.modulus:#x})"

    def __reduce__(self):
        return (get_field, (self.n, self.modulus))

    @property
    def generator(self) -> FieldElement:
        return FieldElement(self.generator_bits, self)

    # -- integer-level arithmetic ---------------------------------------------
    def mul(self, a: int, b: int) -> int:
        if self._log is not None:
            if a == 0 or b == 0:
                return 0
            return self._exp[self._log[a] + self._log[b]]
        return _mulmod(a, b, self.modulus, self.n)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self._log is not None:
            if a == 0:
                return 1 if e == 0 else 0
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        """a^(q-2); the multiplicative inverse for a != 0 and 0 -> 0."""
        if self._log is not None:
            if a == 0:
                return 0
            return self._exp[(self.order - 1) - self._log[a]]
        return self.inv_by_exponent(a)

    def inv_by_exponent(self, a: int) -> int:
        # square-and-multiply on q-2 = 2 + 4 + ... + 2^(n-1): n-1 squarings
        r = 1
        x = a
        for _ in range(self.n - 1):
            x = self.mul(x, x)
            r = self.mul(r, x)
        return r

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^n)")
        return self.mul(a, self.inv(b))

    def trace(self, a: int) -> int:
        return (a & self.trace_mask).bit_count() & 1

    def half_trace(self, c: int) -> int:
        # sum_{i=0}^{(n-1)/2} c^(4^i); only meaningful for odd n
        z, x = 0, c
        for _ in range((self.n + 1) // 2):
            z ^= x
            x = self.sqr(self.sqr(x))
        return z

    @cached_property
    def _artin_schreier_basis(self):
        # echelon basis of the image of z -> z^2 + z, with preimages
        rows: list[tuple[int, int]] = []  # (image, preimage) with distinct leading bits
        for i in range(self.n):
            img, pre = self.sqr(1 << i) ^ (1 << i), 1 << i
            for r_img, r_pre in rows:
                if img ^ r_img < img:
                    img ^= r_img
                    pre ^= r_pre
            if img:
                rows.append((img, pre))
                rows.sort(reverse=True)
        return rows

    def solve_artin_schreier(self, c: int) -> int | None:
        """Some z with z^2 + z = c, or None when Tr(c) = 1."""
        if self.trace(c):
            return None
        if self.n % 2:
            return self.half_trace(c)
        z = 0
        for img, pre in self._artin_schreier_basis:
            if c ^ img < c:
                c ^= img
                z ^= pre
        assert c == 0
        return z

    def is_in_f4(self, b: int) -> bool:
        return self.sqr(self.sqr(b)) == b

    def dlog(self, a: int) -> int:
        """k with g^k = a for the field generator g (baby-step giant-step)."""
        if a == 0:
            raise ValueError("discrete log of zero")
        if self._log is not None:
            return self._log[a]
        N = self.order - 1
        m = math.isqrt(N) + 1
        baby = {}
        x = 1
        for j in range(m):
            baby.setdefault(x, j)
            x = self.mul(x, self.generator_bits)
        step = self.pow(self.inv(self.generator_bits), m)
        y = a
        for i in range(m + 1):
            if y in baby:
                return (i * m + baby[y]) % N
            y = self.mul(y, step)
        raise AssertionError("discrete log not found")

    def gpow(self, k: int) -> int:
        """g^k as bits."""
        return self.pow(self.generator_bits, k % (self.order - 1))

    # -- vectorized arithmetic on numpy arrays ---------------------------------
    @cached_property
    def _np_tables(self):
        if self.n > VECTOR_TABLE_MAX:
            return None
        N = self.order - 1
        exp = np.zeros(2 * N + 1, dtype=np.int64)
        log = np.zeros(self.order, dtype=np.int64)
        if self._exp is not None:
            exp[: 2 * N] = self._exp
            log[:] = self._log
        else:
            x = 1
            g = self.generator_bits
            for k in range(N):
                exp[k] = x
                log[x] = k
                x = _mulmod(x, g, self.modulus, self.n)
            exp[N : 2 * N] = exp[:N]
        return exp, log

    def vmul(self, a, b) -> np.ndarray:
        """Elementwise product; a and b are ints or integer arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        tables = self._np_tables
        if tables is not None:
            exp, log = tables
            out = exp[log[a] + log[b]]
            return np.where((a == 0) | (b == 0), 0, out)
        a, b = np.broadcast_arrays(a, b)
        r = np.zeros(a.shape, dtype=np.int64)
        a = a.copy()
        top = self.order
        for i in range(self.n):
            r ^= np.where((b >> i) & 1, a, 0)
            a <<= 1
            a ^= np.where(a & top, self.modulus, 0)
        return r

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        tables = self._np_tables
        if tables is not None:
            exp, log = tables
            return np.where(a == 0, 0, exp[(self.order - 1) - log[a]])
        r = np.ones(a.shape, dtype=np.int64)
        x = a
        for _ in range(self.n - 1):
            x = self.vmul(x, x)
            r = self.vmul(r, x)
        return r

    def vtrace(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64) & self.trace_mask
        t = np.zeros(a.shape, dtype=np.int64)
        for i in range(self.n):
            t ^= (a >> i) & 1
        return t

    # -- element wrappers ----------------------------------------------------
    def __call__(self, value) -> FieldElement:
        return self.element(value)

    def element(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            self.check(value)
            return value
        v = int(value)
        if not 0 <= v < self.order:
            raise ValueError(f"{v:#x} is not an element of GF(2^{self.n})")
        return FieldElement(v, self)

    def bits(self, value) -> int:
        """Coerce an int or FieldElement of this field to its bit value."""
        if isinstance(value, FieldElement):
            self.check(value)
            return value.bits
        v = int(value)
        if not 0 <= v < self.order:
            raise ValueError(f"{v:#x} is not an element of GF(2^{self.n})")
        return v

    def check(self, e: FieldElement) -> None:
        if e.field is not self and e.field != self:
            raise FieldMismatchError(f"element of {e.field!r} used with {self!r}")

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def elements(self):
        return (FieldElement(v, self) for v in range(self.order))

    def parse(self, text: str) -> FieldElement:
        """Parse lowercase hex ("1d", "0x1d") or a generator power ("g^k")."""
        s = text.strip().lower()
        if s.startswith("g^"):
            return FieldElement(self.gpow(int(s[2:])), self)
        if s == "g":
            return self.generator
        return self.element(int(s, 16))

    def format(self, value, power: bool = False) -> str:
        v = self.bits(value)
        if power and v:
            return f"g^{self.dlog(v)}"
        return format(v, "x")


@lru_cache(maxsize=None)
def get_field(n: int, modulus: int | None = None) -> GF2n:
    if modulus is None:
        modulus = CONWAY.get(n)
    return GF2n(n, modulus)


class FieldElement:
    """An element of a `GF2n`, with operator overloading.

    Hashes and compares equal to its bit value, so elements and plain ints
    can share sets and dict keys.
    """

    __slots__ = ("bits", "field")

    def __init__(self, bits: int, field: GF2n):
        self.bits = bits
        self.field = field

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            self.field.check(other)
            return other.bits
        if isinstance(other, int):
            return self.field.bits(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.bits ^ o, self.field)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.mul(self.bits, o), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.div(self.bits, o), self.field)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field.div(o, self.bits), self.field)

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.bits, e), self.field)

    def __neg__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.bits == other.bits and self.field == other.field
        if isinstance(other, int):
            return self.bits == other
        return NotImplemented

    def __hash__(self):
        return hash(self.bits)

    def __bool__(self):
        return self.bits != 0

    def __int__(self):
        return self.bits

    __index__ = __int__

    def __repr__(self):
        return f"FieldElement({self.bits:#x}, n={self.field.n})"

    def __str__(self):
        return format(self.bits, "x")

    def inv(self) -> FieldElement:
        return inv_q2(self)

    def trace(self) -> int:
        return trace(self)


# -- module-level operations on FieldElements --------------------------------

def _same(a: FieldElement, b: FieldElement) -> GF2n:
    if a.field != b.field:
        raise FieldMismatchError(f"{a!r} and {b!r} live in different fields")
    return a.field


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same(a, b)
    return FieldElement(a.bits ^ b.bits, f)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    f = _same(a, b)
    return FieldElement(f.mul(a.bits, b.bits), f)


def inv_q2(a: FieldElement) -> FieldElement:
    return FieldElement(a.field.inv(a.bits), a.field)


def trace(a: FieldElement) -> int:
    return a.field.trace(a.bits)


def solve_artin_schreier(c: FieldElement) -> FieldElement | None:
    z = c.field.solve_artin_schreier(c.bits)
    return None if z is None else FieldElement(z, c.field)


def is_in_f4(b: FieldElement) -> bool:
    return b.field.is_in_f4(b.bits)


FieldSpec = GF2n
