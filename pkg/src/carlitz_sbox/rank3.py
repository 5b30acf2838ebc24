"""Closed-form uniformity classification of G(x) = [0, 1, beta, x].

With alpha = beta + 1, G is the linear fraction (beta x + 1) / (alpha x + 1)
except at the poles 1/alpha, 1/beta, 0, which it sends to 0, 1, beta/alpha.
Whether G has differential uniformity 4, 6 or 8 and whether its boomerang
uniformity is 6 both reduce to root existence for a handful of polynomials
of degree at most 6, checked with gcd(f, Z^(2^n) - Z).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .carlitz import CarlitzChain, rank3_chain
from .gf2n import FieldElement, GF2n
from .polyarith import FieldPoly, has_root_in_field, roots_in_field
from .uniformity import ORACLE_GUARD, PermTable, bu_point

DU_POLYS = ("f12", "f13")
BU_POLYS = ("h12", "h13", "g1", "g2", "phi")
DEGENERATE = "DEGENERATE"


class InF4Error(ValueError):
    """beta lies in GF(4); the closed forms do not apply."""


@dataclass(frozen=True)
class Rank3Params:
    beta: int
    field: GF2n
    alpha: int = dc_field(init=False)

    def __post_init__(self):
        F = self.field
        b = F.bits(self.beta)
        object.__setattr__(self, "beta", b)
        if b in (0, 1):
            raise ValueError("beta must lie outside {0, 1}")
        object.__setattr__(self, "alpha", b ^ 1)

    @classmethod
    def of(cls, beta, field: GF2n | None = None) -> Rank3Params:
        if field is None:
            field = beta.field
        return cls(field.bits(beta), field)

    @property
    def poles(self) -> tuple[int, int, int]:
        F = self.field
        return (F.inv(self.alpha), F.inv(self.beta), 0)

    @property
    def pole_images(self) -> tuple[int, int, int]:
        return (0, 1, self.field.div(self.beta, self.alpha))

    def in_f4(self) -> bool:
        return self.field.is_in_f4(self.beta)

    def chain(self) -> CarlitzChain:
        return rank3_chain(self.beta, self.field)

    def G(self, x: int) -> int:
        """Piecewise evaluation of G."""
        for p, img in zip(self.poles, self.pole_images):
            if x == p:
                return img
        F = self.field
        return F.div(F.mul(self.beta, x) ^ 1, F.mul(self.alpha, x) ^ 1)

    def cubic(self) -> int:
        """beta^3 + beta^2 + 1."""
        F = self.field
        b2 = F.sqr(self.beta)
        return F.mul(b2, self.beta) ^ b2 ^ 1

    def table(self) -> PermTable:
        return PermTable(self.chain().table, self.field)


def _require_outside_f4(params: Rank3Params):
    if params.in_f4():
        raise InF4Error("beta in GF(4): use the exhaustive oracle")


def build_classifier_polys(params: Rank3Params) -> dict[str, FieldPoly]:
    _require_outside_f4(params)
    F = params.field
    b, a = params.beta, params.alpha
    mul, div, inv = F.mul, F.div, F.inv
    ba = div(b, a)
    a2 = F.sqr(a)
    a4 = F.sqr(a2)
    b2 = F.sqr(b)
    b4 = F.sqr(b2)
    ab = div(a, b)

    def P(*c):
        return FieldPoly(c, F)

    return {
        "f12": P(ab, ab, inv(b), 0, 1),
        "f13": P(1, b, a, 0, 1),
        "h12": P(div(b4, a4), 0, 1, 1, 1),
        "h13": P(div(b2, a4), 0, div(b, a2), ba, 1),
        "g1": P(1, 1, ba, 1, ba, 1, 1),
        "g2": P(1, b, b, 1, 1, 1, 1),
        "phi": P(div(b, a2), ba, 1),
    }


def du_classify(params: Rank3Params, polys: dict | None = None) -> int:
    _require_outside_f4(params)
    if params.cubic() == 0:
        return 8
    polys = polys or build_classifier_polys(params)
    if any(has_root_in_field(polys[k]) for k in DU_POLYS):
        return 6
    return 4


def triggered_polys(params: Rank3Params, polys: dict | None = None,
                    names=DU_POLYS + BU_POLYS) -> list[str]:
    polys = polys or build_classifier_polys(params)
    return [k for k in names if has_root_in_field(polys[k])]


def bu_is_six(params: Rank3Params, polys: dict | None = None) -> bool:
    """True iff none of h12, h13, g1, g2, phi has a root in the field.

    When beta^3 + beta^2 + 1 = 0 the differential uniformity is already 8,
    so the boomerang uniformity cannot be 6.
    """
    _require_outside_f4(params)
    if params.cubic() == 0:
        return False
    polys = polys or build_classifier_polys(params)
    return not any(has_root_in_field(polys[k]) for k in BU_POLYS)


# -- witnesses -------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    a: int
    c: int
    source: str
    validated: bool | None  # None when the oracle was not run


def _witness_candidates(params: Rank3Params, name: str, z: int):
    F = params.field
    al, be = params.alpha, params.beta
    mul, inv = F.mul, F.inv
    al2 = F.sqr(al)
    z2 = F.sqr(z)
    if name == "h12":
        # (z, (alpha z + beta^2) / (alpha^2 z (alpha^2 z^2 + alpha^2 z + beta^2)))
        den = mul(mul(al2, z), mul(al2, z2) ^ mul(al2, z) ^ F.sqr(be))
        if den:
            yield z, F.div(mul(al, z) ^ F.sqr(be), den)
    elif name == "h13":
        den = mul(mul(al2, z), mul(al2, z2) ^ mul(mul(al, be), z) ^ be)
        if den:
            yield z, F.div(be, den)
    elif name == "g1":
        q = z2 ^ z ^ 1
        if q:
            a = F.div(F.div(be, al), q)
            den = mul(al, mul(al, a) ^ be)
            if den:
                yield a, inv(den)
    elif name == "g2":
        q = z2 ^ z ^ 1
        if q:
            c = inv(mul(al, q))
            den = mul(al, mul(al, c) ^ 1)
            if den:
                yield inv(den), c
    elif name == "phi":
        yield z, F.div(mul(al, z) ^ be, mul(al, be))


def bu_witness(params: Rank3Params, polys: dict | None = None, validate: bool | None = None,
               table: PermTable | None = None) -> Witness | None:
    """An (a, c) with bu_G(a, c) >= 8, or None when the boomerang uniformity is 6.

    Candidates come from roots of the triggered polynomials in the fixed
    order h12, h13, g1, g2, phi.  With validation (default for n <= the
    oracle guard) each candidate is checked by direct counting and the first
    passing one is returned.
    """
    _require_outside_f4(params)
    F = params.field
    if validate is None:
        validate = F.n <= ORACLE_GUARD
    if validate and table is None:
        table = params.table()
    if params.cubic() == 0:
        cands = [("cubic", params.beta, 1)]
    else:
        polys = polys or build_classifier_polys(params)
        cands = []
        for name in BU_POLYS:
            for z in sorted(r.bits for r in roots_in_field(polys[name])):
                for a, c in _witness_candidates(params, name, z):
                    if a and c:
                        cands.append((name, a, c))
        if not cands:
            return None
    if not validate:
        name, a, c = cands[0]
        return Witness(a, c, name, None)
    for name, a, c in cands:
        if bu_point(table, a, c) >= 8:
            return Witness(a, c, name, True)
    name, a, c = cands[0]
    return Witness(a, c, name, False)


# -- differential parametrizations -------------------------------------------

def b_values(params: Rank3Params, a) -> tuple[int, int, int]:
    """The b with a = G(p_i) + G(b + p_i) for the poles p = 1/alpha, 1/beta, 0."""
    F = params.field
    a = F.bits(a)
    al, be = params.alpha, params.beta
    if a in (0, 1, F.div(be, al), F.inv(al)):
        raise ValueError("a must avoid 0, 1, beta/alpha and 1/alpha")
    mul, div, inv = F.mul, F.div, F.inv
    b1 = inv(mul(al, mul(al, a) ^ be))
    b2 = div(a ^ 1, mul(be, mul(al, a) ^ 1))
    b3 = div(mul(al, a) ^ 1, mul(F.sqr(al), a))
    return b1, b2, b3


def aux_quadratics(params: Rank3Params, a, b) -> tuple[FieldPoly, FieldPoly, FieldPoly, FieldPoly]:
    """(h_hat, h1, h2, h3) for the pair (a, b); h1(X) = h_hat(X + 1/alpha) and h3 = h_hat."""
    F = params.field
    a, b = F.bits(a), F.bits(b)
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")
    al, be = params.alpha, params.beta
    mul, div, inv = F.mul, F.div, F.inv
    al2 = F.sqr(al)
    t = div(b, mul(al2, a))  # b / (alpha^2 a)
    hh = FieldPoly((div(b, al) ^ t ^ inv(al2), b, 1), F)
    h1 = FieldPoly((t, b, 1), F)
    h2 = FieldPoly((div(b, mul(al, be)) ^ t ^ inv(mul(al2, F.sqr(be))), b, 1), F)
    return hh, h1, h2, hh


def H(params: Rank3Params, a, s, t) -> int:
    """H_a(s, t) = s^2 + s t + t / (alpha^2 a)."""
    F = params.field
    a, s, t = F.bits(a), F.bits(s), F.bits(t)
    return F.sqr(s) ^ F.mul(s, t) ^ F.div(t, F.mul(F.sqr(params.alpha), a))


# -- verdict -------------------------------------------------------------------

@dataclass
class Rank3Verdict:
    beta: int
    du: int | str
    bu_is_six: bool
    triggered: list = dc_field(default_factory=list)
    witness: Witness | None = None

    def as_dict(self, field: GF2n | None = None) -> dict:
        fmt = (lambda v: format(v, "x"))
        d = {
            "beta": fmt(self.beta),
            "du": self.du,
            "bu_is_six": self.bu_is_six,
            "triggered": list(self.triggered),
            "witness": None,
        }
        if self.witness is not None:
            d["witness"] = {
                "a": fmt(self.witness.a),
                "c": fmt(self.witness.c),
                "source": self.witness.source,
                "status": {True: "validated", False: "failed",
                           None: "derived, unvalidated"}[self.witness.validated],
            }
        return d


def classify(params: Rank3Params, witness: bool = True, validate: bool | None = None) -> Rank3Verdict:
    """Closed-form verdict for beta outside GF(4); degenerate for beta = 1."""
    _require_outside_f4(params)
    polys = build_classifier_polys(params)
    trig = triggered_polys(params, polys)
    du = du_classify(params, polys)
    six = bu_is_six(params, polys)
    w = None
    if witness and not six:
        w = bu_witness(params, polys, validate=validate)
    return Rank3Verdict(params.beta, du, six, trig, w)


def sweep_counts(params: Rank3Params) -> tuple[bool, bool]:
    """(bu_is_six, bu_is_six and du == 4), skipping work the answer does not need."""
    _require_outside_f4(params)
    polys = build_classifier_polys(params)
    six = bu_is_six(params, polys)
    if not six:
        return False, False
    return True, du_classify(params, polys) == 4
