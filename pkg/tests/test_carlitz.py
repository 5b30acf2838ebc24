import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from carlitz_sbox.carlitz import (
    CarlitzChain, as_permutation, bracket_eval, compose_chains, convergents, cycle_to_chain,
    eval_chain, format_chain, inverse_chain, linearize, make_involution, parse_chain, pole_data,
    rank3_chain, rational_form, reduce_to_standard, transposition_gadget,
)
from carlitz_sbox.gf2n import get_field
from carlitz_sbox.selftest import random_chain, random_standard_chain
from carlitz_sbox.uniformity import PermTable, bct_max, ddt_max


def ident(F):
    return np.arange(F.order)


# direct nested evaluation, independent of the chain module
def nested(F, coeffs, x):
    r = F.mul(coeffs[0], x) ^ coeffs[1]
    for c in coeffs[2:]:
        r = F.pow(r, F.order - 2) ^ c
    return r


def test_bracket_vectors():
    F = get_field(5)
    c = F(9)
    assert bracket_eval([c]) == c
    assert bracket_eval([F.zero, c]) == c.inv()
    assert bracket_eval([F.zero, F.zero]) == 0
    with pytest.raises(ValueError):
        bracket_eval([])


@given(st.lists(st.integers(0, 63), min_size=1, max_size=8))
def test_bracket_reversal_zero(seq):
    F = get_field(6)
    # plant a zero in half the draws
    if len(seq) > 1 and seq[0] % 2:
        seq = [F.inv(bracket_eval(seq[1:], F)), *seq[1:]]
    assert (bracket_eval(seq, F) == 0) == (bracket_eval(seq[::-1], F) == 0)


def test_chain_invariants():
    F = get_field(4)
    with pytest.raises(ValueError):
        CarlitzChain((0, 1), F)
    with pytest.raises(ValueError):
        CarlitzChain((1, 0, 0, 1), F)  # a_2 = 0 inside
    assert CarlitzChain((1, 0, 0), F).m == 1  # [0, x]


def test_eval_rank3_poles():
    F = get_field(8)
    beta = 0x53
    alpha = beta ^ 1
    g = rank3_chain(beta, F)
    assert g(F.inv(alpha)) == 0
    assert g(F.inv(beta)) == 1
    assert g(0) == F.div(beta, alpha)
    assert eval_chain(g, F(0)) == F(F.div(beta, alpha))


def test_eval_degenerate_rank3():
    F = get_field(6)
    t = rank3_chain(1, F).table
    assert t[0] == 0 and t[1] == 1
    assert all(t[x] == x ^ 1 for x in range(2, 64))


def test_eval_affine_and_nested():
    F = get_field(8)
    ch = CarlitzChain((7, 3), F)
    assert all(ch(x) == F.mul(7, x) ^ 3 for x in range(256))
    rng = random.Random(0)
    for _ in range(20):
        ch = random_chain(F, rng.randrange(0, 7), rng)
        xs = rng.sample(range(256), 10)
        assert [ch(x) for x in xs] == [nested(F, ch.coeffs, x) for x in xs]
        assert [int(ch.table[x]) for x in xs] == [ch(x) for x in xs]


def test_as_permutation_vectors():
    F = get_field(6)
    assert (as_permutation(CarlitzChain((1, 0), F)).forward == ident(F)).all()
    inv = as_permutation(CarlitzChain((1, 0, 0), F)).forward
    assert inv.tolist() == [F.inv(x) for x in range(64)]
    F4 = get_field(4)
    for beta in range(1, 16):
        as_permutation(rank3_chain(beta, F4))
    with pytest.raises(ValueError):
        as_permutation(CarlitzChain((1, 0), get_field(21)))


def test_convergents_rank3_example():
    F = get_field(8)
    gamma = 0x35
    cv = convergents(CarlitzChain((1, 0, 1, gamma, 0), F))
    assert list(zip(cv.alphas, cv.betas)) == [(0, 1), (1, 0), (1, 1), (gamma ^ 1, gamma), (1, 1)]
    cv0 = convergents(CarlitzChain((5, 9), F))
    assert cv0.alphas == (0, 5) and cv0.betas == (1, 9)


def test_pole_data_rank3():
    F = get_field(8)
    beta = 0x53
    alpha = beta ^ 1
    pd = pole_data(rank3_chain(beta, F))
    assert set(pd.poles) == {F.inv(alpha), F.inv(beta), 0}
    assert set(pd.exceptions.values()) == {0, 1, F.div(beta, alpha)}


def test_pole_data_rank1():
    F = get_field(8)
    pd = pole_data(CarlitzChain((6, 10, 33), F))  # [33, 10 + 6x]
    assert pd.poles == (F.div(10, 6),)


@given(st.integers(0, 2 ** 32))
def test_rational_form_off_poles(seed):
    rng = random.Random(seed)
    F = get_field(rng.choice([3, 4, 5, 6]))
    ch = random_chain(F, rng.randrange(0, 8), rng)
    pd = pole_data(ch)
    A = set(pd.a_values[: ch.m])
    t = ch.table
    for x in range(F.order):
        if x in A:
            assert t[x] == pd.exceptions[x]
        else:
            assert t[x] == rational_form(ch, x)


def test_reduce_to_standard_vectors():
    F = get_field(8)
    std = CarlitzChain((1, 0, 1, 0x44, 0x92, 0), F)
    assert reduce_to_standard(std) == std
    beta, gamma = 0x53, 0x21
    red = reduce_to_standard(make_involution(beta, gamma, F))
    assert red == CarlitzChain((1, 0, 1, F.sqr(beta), 0), F)
    assert reduce_to_standard(CarlitzChain((3, 4, 5), F)) == CarlitzChain((1, 0, 0), F)
    with pytest.raises(ValueError):
        reduce_to_standard(CarlitzChain((3, 4), F))


def test_reduce_preserves_uniformity_n6():
    F = get_field(6)
    rng = random.Random(6)
    for _ in range(6):
        ch = random_chain(F, 4, rng)
        p, q = PermTable(ch.table, F), PermTable(reduce_to_standard(ch).table, F)
        assert ddt_max(p)[0] == ddt_max(q)[0]
        assert bct_max(p)[0] == bct_max(q)[0]


def test_inverse_chain():
    F = get_field(8)
    beta = 0x53
    assert inverse_chain(CarlitzChain((1, 0, 1, beta, 0), F)) == rank3_chain(beta, F)
    pal = CarlitzChain((1, 0, 1, 9, 9, 1, 0), F)
    assert inverse_chain(pal) == pal
    rng = random.Random(8)
    for _ in range(10):
        std = random_standard_chain(F, rng.randrange(2, 9), rng)
        assert (inverse_chain(std).table[std.table] == ident(F)).all()
    with pytest.raises(ValueError):
        inverse_chain(CarlitzChain((2, 0, 1, 0), F))


def test_linearize_fractional_example():
    F = get_field(8)
    gamma = 0x35
    ch = CarlitzChain((1, 0, 1, gamma, 0), F)  # [0, gamma, 1, x]
    lin = linearize(ch)
    assert lin.case == "fractional"
    assert lin.l1.slope == F.inv(gamma ^ 1) and lin.l1.offset == F.div(gamma, gamma ^ 1)
    assert (lin.l2.slope, lin.l2.offset) == (gamma ^ 1, 1)
    assert lin.exceptional == {gamma, 1, 0}
    comp = lin.l2.table()[ch.table[lin.l1.table()]]
    assert (comp[gamma], comp[1], comp[0]) == (0, F.inv(gamma), 1)
    for x in range(256):
        if x not in lin.exceptional:
            assert comp[x] == F.inv(x)


def test_linearize_affine_example():
    F = get_field(8)
    ch = rank3_chain(1, F)  # [0, 1, 1, x]
    lin = linearize(ch)
    assert lin.case == "affine"
    comp = lin.l1.table()[ch.table]
    assert lin.exceptional == {0, 1}
    assert all(comp[x] == x for x in range(256) if x not in (0, 1))


@pytest.mark.parametrize("n", [4, 6, 8])
def test_linearize_random(n):
    F = get_field(n)
    rng = random.Random(n)
    for _ in range(20):
        ch = random_chain(F, rng.randrange(1, 7), rng)
        lin = linearize(ch)
        assert len(lin.exceptional) <= ch.m
        if lin.case == "fractional":
            comp = lin.l2.table()[ch.table[lin.l1.table()]]
            target = F.vinv(ident(F))
        else:
            comp = lin.l1.table()[ch.table]
            target = ident(F)
        mask = np.ones(F.order, bool)
        mask[list(lin.exceptional)] = False
        assert (comp[mask] == target[mask]).all()
        if ch.m == 1:
            assert (comp == target).all()


def cycle_perm(F, cyc):
    pi = np.arange(F.order)
    for i, c in enumerate(cyc):
        pi[c] = cyc[(i + 1) % len(cyc)]
    return pi


def test_gadget_is_transposition():
    F = get_field(6)
    for c in (1, 7, 40):
        t = transposition_gadget(c, F).table
        assert (t == cycle_perm(F, [0, c])).all()


def test_cycle_with_zero_and_one():
    F = get_field(6)
    gamma = 0x2B
    ch = cycle_to_chain([F.zero, F.one, F(gamma)])
    pi = {0: 1, 1: gamma, gamma: 0}
    assert all(ch.table[x] == F.inv(pi.get(x, x)) for x in range(64))


@pytest.mark.parametrize("n", [4, 6, 8])
def test_cycles_random(n):
    F = get_field(n)
    rng = random.Random(n)
    for k in range(2, 8):
        for with_zero in (True, False):
            cyc = rng.sample(range(1, F.order), k)
            if with_zero:
                cyc[rng.randrange(k)] = 0
            ch = cycle_to_chain(cyc, F)
            assert (ch.table == F.vinv(cycle_perm(F, cyc))).all()
            assert ch.m <= (3 * k - 4 if with_zero else 3 * k + 2)


def test_cycle_rejects_repeats():
    F = get_field(4)
    with pytest.raises(ValueError):
        cycle_to_chain([1, 2, 1], F)
    with pytest.raises(ValueError):
        cycle_to_chain([3], F)


def test_compose_chains_tables():
    F = get_field(6)
    rng = random.Random(2)
    for _ in range(30):
        f = random_chain(F, rng.randrange(0, 5), rng)
        h = random_chain(F, rng.randrange(0, 5), rng)
        assert (compose_chains(f, h).table == f.table[h.table]).all()


def test_involution_gamma_zero_piecewise():
    F = get_field(8)
    beta = 0x53
    alpha2 = F.sqr(beta ^ 1)
    t = make_involution(beta, 0, F).table
    assert t[0] == F.div(beta, alpha2)
    assert t[F.div(beta, alpha2)] == 0
    assert t[F.inv(beta)] == F.inv(beta)
    for x in range(256):
        if x not in (0, F.inv(beta), F.div(beta, alpha2)):
            assert t[x] == F.div(F.mul(beta, x) ^ 1, F.mul(alpha2, x) ^ beta)


def test_involutions_n8():
    F = get_field(8)
    rng = random.Random(1)
    for _ in range(20):
        t = make_involution(rng.randrange(1, 256), rng.randrange(256), F).table
        assert (t[t] == ident(F)).all()
    with pytest.raises(ValueError):
        make_involution(0, 1, F)


def test_chain_text_round_trip():
    F = get_field(8)
    ch = parse_chain("0,1,1d,x", F)
    assert ch == rank3_chain(0x1D, F)
    assert format_chain(ch) == "[0,1,1d,x]"
    ch2 = parse_chain("[5,3,2+7*x]", F)
    assert ch2.coeffs == (7, 2, 3, 5)
    assert parse_chain(format_chain(ch2), F) == ch2
    assert parse_chain("0,g^8,x", F).coeffs == (1, 0, 0x1D, 0)
    with pytest.raises(ValueError):
        parse_chain("0,1,2", F)
