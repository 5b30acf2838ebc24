"""Named invariant checks, run by `carlitz-sbox selftest` and the test suite.

Each check raises AssertionError on the first counterexample it finds and
returns a short summary string otherwise.
"""

from __future__ import annotations

import random
import time
from typing import Callable

import numpy as np

from .carlitz import (
    CarlitzChain, bracket_eval, convergents, inverse_chain, make_involution,
    pole_data, rational_form, reduce_to_standard,
)
from .gf2n import get_field
from .polyarith import FieldPoly, has_root_in_field, resultant_quadratics
from .rank3 import (
    Rank3Params, aux_quadratics, b_values, build_classifier_polys, bu_is_six,
    du_classify,
)
from .uniformity import PermTable, bct_max, classify_solutions, ddt_max


def random_chain(F, m: int, rng: random.Random) -> CarlitzChain:
    c = [rng.randrange(1, F.order), rng.randrange(F.order)]
    c += [rng.randrange(1, F.order) for _ in range(m - 1)]
    if m >= 1:
        c.append(rng.randrange(F.order))
    return CarlitzChain(c, F)


def random_standard_chain(F, m: int, rng: random.Random) -> CarlitzChain:
    """[0, a_m, ..., a_3, 1, x] with m >= 2."""
    return CarlitzChain((1, 0, 1, *(rng.randrange(1, F.order) for _ in range(m - 2)), 0), F)


def betas_outside_f4(F):
    return [b for b in range(2, F.order) if not F.is_in_f4(b)]


# -- field -----------------------------------------------------------------

def check_field_axioms(rng, quick=False):
    for n in (2, 3, 4, 5, 6):
        F = get_field(n)
        x = np.arange(F.order, dtype=np.int64)
        a, b, c = np.meshgrid(x, x, x, indexing="ij")
        assert (F.vmul(F.vmul(a, b), c) == F.vmul(a, F.vmul(b, c))).all()
        assert (F.vmul(a, b ^ c) == F.vmul(a, b) ^ F.vmul(a, c)).all()
        assert (F.vmul(a, b) == F.vmul(b, a)).all()
    for n in (7, 8):
        F = get_field(n)
        x = np.arange(F.order, dtype=np.int64)
        a, b = np.meshgrid(x, x, indexing="ij")
        assert (F.vmul(a, b) == F.vmul(b, a)).all()
        assert (F.vmul(x[1:], F.vinv(x[1:])) == 1).all()
        c = rng.randrange(F.order)
        assert (F.vmul(a, b ^ c) == F.vmul(a, b) ^ F.vmul(a, c)).all()
    samples = 50 if quick else 300
    for n in range(2, 25):
        F = get_field(n)
        for _ in range(samples):
            a, b, c = (rng.randrange(F.order) for _ in range(3))
            assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
            assert F.mul(a, b ^ c) == F.mul(a, b) ^ F.mul(a, c)
            if a:
                assert F.mul(a, F.inv(a)) == 1
                assert F.inv(a) == F.inv_by_exponent(a)
    return "exhaustive n<=6, sampled n<=24"


def check_frobenius_and_trace(rng, quick=False):
    for n in range(2, 11):
        F = get_field(n)
        x = np.arange(F.order, dtype=np.int64)
        y = x
        for _ in range(n):
            y = F.vmul(y, y)
        assert (y == x).all(), f"a^(2^n) != a at n={n}"
        t = F.vtrace(x)
        assert t.sum() == F.order // 2
        assert (F.vtrace(F.vmul(x, x)) == t).all()
        u = rng.randrange(F.order)
        assert (F.vtrace(x ^ u) == t ^ F.trace(u)).all()
        image = set((F.vmul(x, x) ^ x).tolist())
        for c in range(F.order):
            z = F.solve_artin_schreier(c)
            assert (z is not None) == (c in image) == (t[c] == 0)
            if z is not None:
                assert F.sqr(z) ^ z == c
    return "n<=10 exhaustive"


# -- chains ----------------------------------------------------------------

def check_bracket_reversal(rng, quick=False):
    count = 0
    for n in (3, 4, 6, 8):
        F = get_field(n)
        for _ in range(100 if quick else 400):
            s = rng.randrange(1, 8)
            tail = [rng.randrange(F.order) for _ in range(s)]
            # plant a zero half the time: b_0 = inv([b_1..b_s])
            head = F.inv(bracket_eval(tail, F)) if rng.random() < 0.5 else rng.randrange(F.order)
            seq = [head, *tail]
            z1 = bracket_eval(seq, F) == 0
            z2 = bracket_eval(seq[::-1], F) == 0
            assert z1 == z2, (n, seq)
            count += z1
    assert count > 0
    return f"{count} zero brackets"


def check_convergent_identities(rng, quick=False):
    for n in (3, 4, 5, 8, 12, 20):
        F = get_field(n)
        for _ in range(40 if quick else 150):
            ch = random_chain(F, rng.randrange(0, 10), rng)
            cv = convergents(ch)
            a0 = ch.coeffs[0]
            for i in range(1, ch.m + 2):
                assert F.mul(cv.alphas[i], cv.betas[i - 1]) ^ F.mul(cv.betas[i], cv.alphas[i - 1]) == a0
                assert (cv.alphas[i], cv.betas[i]) != (0, 0)
                assert (cv.alphas[i], cv.alphas[i - 1]) != (0, 0)
    return "cross identity and nondegeneracy"


def check_pole_identities(rng, quick=False):
    for n in (3, 4, 6, 8, 10):
        F = get_field(n)
        for _ in range(10 if quick else 40):
            ch = random_chain(F, rng.randrange(0, 9), rng)
            pd = pole_data(ch)
            cv = convergents(ch)
            t = ch.table
            A = set(pd.a_values[: ch.m])
            for x in range(F.order):
                if x not in A:
                    assert t[x] == rational_form(ch, x, cv)
            for i in range(1, ch.m + 1):
                assert t[pd.A(i)] == bracket_eval(ch.coeffs[ch.m + 1 : i : -1], F)
    return "rational form off poles, exceptions at poles"


def check_minimal_representatives(rng, quick=False):
    for n in (2, 3, 4, 8):
        F = get_field(n)
        for _ in range(100 if quick else 300):
            ch = random_chain(F, rng.randrange(1, 12), rng)
            pd = pole_data(ch)
            cv = convergents(ch)
            sim_min = {min(cl) for cl in pd.sim_partition}
            for j in sim_min:
                assert cv.alphas[j] != 0
                assert pd.A(j) == F.div(cv.betas[j], cv.alphas[j])
            approx_min = {min(cl) for cl in pd.approx_partition if 0 not in cl}
            assert sim_min == approx_min, (ch, pd.sim_partition, pd.approx_partition)
    return "sim and approx minimal representatives agree"


def check_involutions(rng, quick=False):
    for n in (3, 4, 6, 8, 10):
        F = get_field(n)
        for _ in range(5 if quick else 20):
            ch = make_involution(rng.randrange(1, F.order), rng.randrange(F.order), F)
            t = ch.table
            assert (t[t] == np.arange(F.order)).all()
            # general palindromes with a_0 = 1: a_{m+1-i} = a_{1+i}
            m = rng.randrange(1, 8)
            body = [rng.randrange(1, F.order) for _ in range(m + 1)]
            body = [body[min(i, m - i)] for i in range(m + 1)]
            c = [1, *body]
            ch = CarlitzChain(c, F)
            t = ch.table
            assert (t[t] == np.arange(F.order)).all(), ch
    return "palindromic chains are involutions"


def check_reduction_preserves_uniformity(rng, quick=False):
    for n in (4, 6, 8):
        F = get_field(n)
        for _ in range(2 if quick else 5):
            ch = random_chain(F, rng.randrange(2, 7), rng)
            std = reduce_to_standard(ch)
            p, q = PermTable(ch.table, F), PermTable(std.table, F)
            assert ddt_max(p)[0] == ddt_max(q)[0]
            assert bct_max(p)[0] == bct_max(q)[0]
            inv = inverse_chain(std)
            assert (inv.table[std.table] == np.arange(F.order)).all()
    return "differential and boomerang maxima preserved"


def check_class_c_count(rng, quick=False):
    """#C in {0, 2}, with the trace and forbidden-root criterion, for G = [0,1,a_3..a_m,x]."""
    tried = 0
    for n in (3, 4, 5, 6):
        F = get_field(n)
        for _ in range(2 if quick else 4):
            m = rng.randrange(2, 7)
            std = random_standard_chain(F, m, rng)
            cv = convergents(std)
            am, am1 = cv.alphas[m], cv.alphas[m - 1]
            if am == 0:
                continue
            tried += 1
            gch = inverse_chain(std)
            g = PermTable(gch.table, F)
            P = pole_data(gch).poles
            X = [F.mul(am, p) ^ am1 for p in P]
            for a in range(1, F.order):
                for b in range(1, F.order):
                    cC = classify_solutions(g, P, a, b)[2]
                    assert cC in (0, 2)
                    tr = F.trace(F.inv(F.mul(F.mul(a, b), F.sqr(am))))
                    hit = any(F.sqr(x) ^ F.mul(F.mul(b, am), x) ^ F.div(b, a) == 0 for x in X)
                    assert (cC == 2) == (tr == 0 and not hit), (n, std, a, b)
    assert tried > 0
    return f"{tried} chains, all (a,b)"


def check_apn_bound(rng, quick=False):
    seen = 0
    for n in (4, 6, 8):
        F = get_field(n)
        bound = 2 ** (n - 1) / 3
        for _ in range(10 if quick else 30):
            m = rng.randrange(2, min(12, 2 + int(bound) + 2))
            std = random_standard_chain(F, m, rng)
            g = inverse_chain(std)
            ell = len(pole_data(g).poles)
            if ell < bound:
                seen += 1
                assert ddt_max(PermTable(g.table, F))[0] >= 4, g
    assert seen > 0
    return f"{seen} chains below the pole bound"


# -- rank three ------------------------------------------------------------

def check_trace_identity(rng, quick=False):
    for n in (4, 5, 6, 7, 8):
        F = get_field(n)
        for beta in betas_outside_f4(F):
            P = Rank3Params(beta, F)
            al = P.alpha
            ia = F.inv(al)
            poles = set(P.poles)
            for b in range(1, F.order):
                if b ^ ia not in poles:
                    a = P.G(ia) ^ P.G(b ^ ia)
                    if a:
                        lhs = F.div(beta, F.mul(al, a))
                        assert lhs == F.inv(F.mul(F.mul(a, b), F.sqr(al))) ^ 1
                if b not in poles:
                    a = P.G(0) ^ P.G(b)
                    if a:
                        assert F.inv(F.mul(al, b)) == F.inv(F.mul(F.mul(a, b), F.sqr(al))) ^ 1
    return "both identities, n<=8"


def check_resultant_identities(rng, quick=False):
    for n in range(5, 11):
        F = get_field(n)
        m, d, i, s = F.mul, F.div, F.inv, F.sqr
        for beta in betas_outside_f4(F):
            P = Rank3Params(beta, F)
            al, cub = P.alpha, P.cubic()

            def q(a, b, k):
                return aux_quadratics(P, a, b)[k]

            ab = m(al, beta)
            cases = [
                (q(1, i(ab), 1), q(1, d(beta, s(al)), 3), m(F.pow(al, 8), beta)),
                (q(d(beta, al), i(al), 1), q(d(beta, al), i(m(s(al), beta)), 2),
                 m(F.pow(al, 6), F.pow(beta, 4))),
                (q(i(al), i(beta), 2), q(i(al), i(s(al)), 1), m(F.pow(al, 5), s(beta))),
            ]
            for f, g, den in cases:
                assert resultant_quadratics(f, g).bits == d(cub, den), (n, beta)
            assert q(1, i(ab), 1)(d(beta, s(al))) == d(cub, m(F.pow(al, 4), beta))
            assert q(1, d(beta, s(al)), 3)(i(ab)) == d(cub, m(F.pow(al, 4), s(beta)))
            polys = build_classifier_polys(P)
            # every a for small n, a sample above
            avals = range(2, F.order) if n <= (6 if quick else 7) else rng.sample(range(2, F.order), 12)
            for a in avals:
                if a in (d(beta, al), i(al)):
                    continue
                b1, b2, b3 = b_values(P, a)
                r = resultant_quadratics(q(a, b1, 1), q(a, b2, 2)).bits
                k = i(m(m(ab, a), m(m(al, a) ^ beta, m(al, a) ^ 1)))
                assert r == m(s(k), polys["h12"](a))
                r = resultant_quadratics(q(a, b1, 1), q(a, b3, 3)).bits
                k = i(m(m(s(al), s(a)), m(al, a) ^ beta))
                assert r == m(s(k), polys["h13"](a))
    return "special resultants all beta, general ones all a for n<=7, sampled above"


def h23_poly(P: Rank3Params) -> FieldPoly:
    F = P.field
    al, be = P.alpha, P.beta
    return FieldPoly((F.div(be, F.pow(al, 5)), 0, F.inv(F.mul(al, be)), F.inv(al), 1), F)


def check_h23_equivalence(rng, quick=False):
    for n in range(5, 11):
        F = get_field(n)
        for beta in betas_outside_f4(F):
            P = Rank3Params(beta, F)
            polys = build_classifier_polys(P)
            assert has_root_in_field(h23_poly(P)) == has_root_in_field(polys["h12"]), (n, beta)
    return "root existence of h23 matches h12, 5<=n<=10"


def check_frobenius_invariance(rng, quick=False):
    for n in range(5, 11 if not quick else 10):
        F = get_field(n)
        for beta in betas_outside_f4(F):
            P, Q = Rank3Params(beta, F), Rank3Params(F.sqr(beta), F)
            assert du_classify(P) == du_classify(Q)
            assert bu_is_six(P) == bu_is_six(Q)
    return "verdicts constant on Frobenius orbits"


def check_phi_trace(rng, quick=False):
    for n in range(5, 11):
        F = get_field(n)
        for beta in betas_outside_f4(F):
            P = Rank3Params(beta, F)
            phi = build_classifier_polys(P)["phi"]
            assert has_root_in_field(phi) == (F.trace(F.inv(beta)) == 0)
    return "phi has a root iff Tr(1/beta) = 0"


CHECKS: dict[str, Callable] = {
    "field_axioms": check_field_axioms,
    "frobenius_and_trace": check_frobenius_and_trace,
    "bracket_reversal": check_bracket_reversal,
    "convergent_identities": check_convergent_identities,
    "pole_identities": check_pole_identities,
    "minimal_representatives": check_minimal_representatives,
    "involutions": check_involutions,
    "reduction_preserves_uniformity": check_reduction_preserves_uniformity,
    "class_c_count": check_class_c_count,
    "apn_bound": check_apn_bound,
    "trace_identity": check_trace_identity,
    "resultant_identities": check_resultant_identities,
    "h23_equivalence": check_h23_equivalence,
    "frobenius_invariance": check_frobenius_invariance,
    "phi_trace": check_phi_trace,
}


def run_selftest(seed: int = 0, quick: bool = False, names=None, log=print) -> dict[str, tuple[bool, str, float]]:
    results = {}
    for name, fn in CHECKS.items():
        if names and name not in names:
            continue
        rng = random.Random(f"{seed}:{name}")
        t0 = time.perf_counter()
        try:
            msg = fn(rng, quick)
            ok = True
        except AssertionError as e:
            ok, msg = False, f"counterexample: {e!r}"
        dt = time.perf_counter() - t0
        results[name] = (ok, msg, dt)
        if log:
            log(f"{'PASS' if ok else 'FAIL'} {name} ({dt:.2f}s): {msg}")
    return results
