import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from carlitz_sbox.gf2n import get_field
from carlitz_sbox.polyarith import has_root_in_field, roots_in_field
from carlitz_sbox.rank3 import (
    BU_POLYS, DU_POLYS, H, InF4Error, Rank3Params, Witness, aux_quadratics, b_values,
    build_classifier_polys, bu_is_six, bu_witness, classify, du_classify, sweep_counts,
    triggered_polys,
)
from carlitz_sbox.selftest import h23_poly
from carlitz_sbox.uniformity import bu_max, bu_point, ddt_max, du_point


def outside_f4(F):
    return [b for b in range(2, F.order) if not F.is_in_f4(b)]


def test_params_basics():
    F = get_field(8)
    P = Rank3Params(0x53, F)
    assert P.alpha == 0x52
    assert [P.G(p) for p in P.poles] == list(P.pole_images)
    assert [P.G(x) for x in range(256)] == P.table().forward.tolist()
    assert Rank3Params.of(F(0x53)) == P
    for bad in (0, 1):
        with pytest.raises(ValueError):
            Rank3Params(bad, F)


def test_f4_rejected():
    F = get_field(6)
    w = next(b for b in range(2, 64) if F.is_in_f4(b))
    P = Rank3Params(w, F)
    for fn in (build_classifier_polys, du_classify, bu_is_six, bu_witness, classify, sweep_counts):
        with pytest.raises(InF4Error):
            fn(P)


def test_poly_shapes():
    F = get_field(8)
    polys = build_classifier_polys(Rank3Params(0x53, F))
    assert set(polys) == set(DU_POLYS + BU_POLYS)
    degs = {k: p.degree for k, p in polys.items()}
    assert degs == {"f12": 4, "f13": 4, "h12": 4, "h13": 4, "g1": 6, "g2": 6, "phi": 2}
    assert all(p.coeffs[-1] == 1 for p in polys.values())


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_phi_root_iff_trace_of_inverse_beta(n):
    F = get_field(n)
    for beta in outside_f4(F):
        phi = build_classifier_polys(Rank3Params(beta, F))["phi"]
        assert has_root_in_field(phi) == (F.trace(F.inv(beta)) == 0)


@pytest.mark.parametrize("n", [5, 7])
def test_classifier_matches_oracle_odd(n):
    F = get_field(n)
    for beta in outside_f4(F):
        P = Rank3Params(beta, F)
        g = P.table()
        assert du_classify(P) == ddt_max(g)[0]
        assert bu_is_six(P) == (bu_max(g)[0] == 6)


def test_n4_has_no_du4_bu6():
    F = get_field(4)
    hits = [b for b in outside_f4(F) if sweep_counts(Rank3Params(b, F))[1]]
    assert hits == []


@pytest.mark.parametrize("n,expect", [(6, 6), (8, 16)])
def test_bu6_counts_by_oracle(n, expect):
    F = get_field(n)
    got = sum(bu_max(Rank3Params(b, F).table())[0] == 6 for b in outside_f4(F))
    assert got == expect
    assert sum(sweep_counts(Rank3Params(b, F))[0] for b in outside_f4(F)) == expect


def test_cubic_gives_du8():
    for n in (6, 9, 12):
        F = get_field(n)
        roots = [b for b in range(2, F.order) if Rank3Params(b, F).cubic() == 0]
        assert len(roots) == 3
        for b in roots:
            P = Rank3Params(b, F)
            assert du_classify(P) == 8 and not bu_is_six(P)
            w = bu_witness(P, validate=n <= 9)
            assert (w.a, w.c, w.source) == (b, 1, "cubic")
    F = get_field(8)
    assert not any(Rank3Params(b, F).cubic() == 0 for b in range(2, 256))


@pytest.mark.parametrize("n", [6, 8])
def test_witnesses(n):
    F = get_field(n)
    for beta in outside_f4(F):
        P = Rank3Params(beta, F)
        w = bu_witness(P)
        if bu_is_six(P):
            assert w is None
            continue
        assert isinstance(w, Witness) and w.validated
        assert bu_point(P.table(), w.a, w.c) >= 8
        assert w.source in BU_POLYS + ("cubic",)
        assert w.source == "cubic" or w.source in triggered_polys(P, names=BU_POLYS)


def test_unvalidated_witness_status():
    F = get_field(8)
    beta = next(b for b in outside_f4(F) if not bu_is_six(Rank3Params(b, F)))
    d = classify(Rank3Params(beta, F), validate=False).as_dict()
    assert d["witness"]["status"] == "derived, unvalidated"
    d = classify(Rank3Params(beta, F), validate=True).as_dict()
    assert d["witness"]["status"] == "validated"
    assert set(d) == {"beta", "du", "bu_is_six", "triggered", "witness"}


@pytest.mark.parametrize("n", [6, 7, 8])
def test_b_values_hit_the_poles(n):
    F = get_field(n)
    for beta in outside_f4(F)[::3]:
        P = Rank3Params(beta, F)
        skip = {0, 1, F.div(beta, P.alpha), F.inv(P.alpha)}
        for a in range(F.order):
            if a in skip:
                with pytest.raises(ValueError):
                    b_values(P, a)
                continue
            bs = b_values(P, a)
            for p, b in zip(P.poles, bs):
                assert P.G(p) ^ P.G(b ^ p) == a


def test_b1_equals_b2_condition():
    # b1 = b2 happens for some a iff Tr(beta / alpha) = 0
    for n in (5, 6, 7, 8):
        F = get_field(n)
        for beta in outside_f4(F):
            P = Rank3Params(beta, F)
            skip = {0, 1, F.div(beta, P.alpha), F.inv(P.alpha)}
            hit = any(b[0] == b[1] for a in range(F.order) if a not in skip for b in [b_values(P, a)])
            assert hit == (F.trace(F.div(beta, P.alpha)) == 0), (n, beta)


def test_aux_quadratics_shift():
    F = get_field(7)
    rng = np.random.default_rng(3)
    for _ in range(20):
        beta, a, b = (int(v) for v in rng.integers(2, F.order, 3))
        P = Rank3Params(beta, F)
        hh, h1, h2, h3 = aux_quadratics(P, a, b)
        assert h3 == hh
        s = F.inv(P.alpha)
        assert all(h1(x) == hh(x ^ s) for x in range(F.order))
        assert all(p.degree == 2 and p.coeffs[1] == b for p in (hh, h1, h2))
    with pytest.raises(ValueError):
        aux_quadratics(P, 0, 1)


def test_aux_quadratic_roots_solve_equation():
    # off the poles, G(x) + G(x + b) = a exactly when h_hat(x) = 0; h1 is the same in X = x + 1/alpha
    F = get_field(8)
    P = Rank3Params(0x53, F)
    s = F.inv(P.alpha)
    for a in (3, 0x1D, 0x80):
        for b in (5, 0x40, 0xC7):
            sols = {x for x in range(256) if P.G(x) ^ P.G(x ^ b) == a}
            hh, h1 = aux_quadratics(P, a, b)[:2]
            generic = {x for x in range(256) if x not in P.poles and x ^ b not in P.poles}
            assert {r.bits for r in roots_in_field(hh)} & generic == sols & generic
            assert {r.bits ^ s for r in roots_in_field(h1)} == {r.bits for r in roots_in_field(hh)}
            assert len(sols) == du_point(P.table(), a, b)


def test_H_definition():
    F = get_field(6)
    P = Rank3Params(0x2B, F)
    a, s, t = 5, 7, 9
    assert H(P, a, s, 0) == F.sqr(s)
    assert H(P, a, 0, t) == F.div(t, F.mul(F.sqr(P.alpha), a))
    assert H(P, a, s, t) == F.sqr(s) ^ F.mul(s, t) ^ H(P, a, 0, t)


@pytest.mark.parametrize("n", [5, 6, 8])
def test_h23_matches_h12(n):
    F = get_field(n)
    for beta in outside_f4(F):
        P = Rank3Params(beta, F)
        assert has_root_in_field(h23_poly(P)) == has_root_in_field(build_classifier_polys(P)["h12"])


@settings(max_examples=30)
@given(st.sampled_from([9, 10, 11, 13, 16]), st.data())
def test_frobenius_invariance(n, data):
    F = get_field(n)
    beta = data.draw(st.integers(2, F.order - 1).filter(lambda b: not F.is_in_f4(b)))
    v1 = classify(Rank3Params(beta, F), witness=False)
    v2 = classify(Rank3Params(F.sqr(beta), F), witness=False)
    assert (v1.du, v1.bu_is_six, v1.triggered) == (v2.du, v2.bu_is_six, v2.triggered)
