"""Weight-space functions and the family action."""

import math
import random

import pytest

from pwl.errors import BadLevel, NotAUnit, WidthInsufficient
from pwl.iwasawa import (FamilyVec, WeightFn, act_family, branch_count,
                         char_series, e_branch, family_tail, one_n, sp_k,
                         sp_vector, trunc_minus, trunc_plus, z)
from pwl.matrices import PadicMat
from pwl.padic import PrecInt, Weight, eval_char
from pwl.sympow import act_universal


def rand_fn(rng, p, r, d):
    M = p ** r
    return WeightFn(p, r, d, [[rng.randrange(M) for _ in range(d)]
                              for _ in range(branch_count(p))])


def rand_fam(rng, p, r, d, out_width, width):
    return FamilyVec(p, r, d, out_width,
                     [rand_fn(rng, p, r, d) for _ in range(width)])


def test_branch_idempotents():
    p, r, d = 3, 3, 2
    es = [e_branch(zeta, p, r, d) for zeta in range(branch_count(p))]
    total = WeightFn.zero(p, r, d)
    for i, e in enumerate(es):
        assert e * e == e
        total = total + e
        for j, f in enumerate(es):
            if i != j:
                assert (e * f).is_zero()
    assert total == WeightFn.const(1, p, r, d)


def test_tautological_weight_specializes():
    w = z(3, 4, 3)
    for k in range(-5, 15):
        assert sp_k(k, w) == PrecInt(3, 3, k)


def test_z_on_branch():
    p, r, d = 5, 2, 3
    w = z(p, r, d)
    cut = (z(p, r, d) * e_branch(7, p, r, d)).comps
    assert cut[7] == [7, 1, 0]
    assert all(not any(c) for i, c in enumerate(cut) if i != 7)


def test_one_n_matches_powers():
    # log/exp series route versus plain modular exponentiation
    f = one_n(9, 3, 4, 4)
    for k in range(-8, 21):
        assert sp_k(k, f) == PrecInt(3, 4, pow(10, k, 3 ** 4))
    g = one_n(10, 5, 3, 3)
    for k in range(-6, 13):
        assert sp_k(k, g) == PrecInt(5, 3, pow(11, k, 5 ** 3))


def test_one_n_guards():
    with pytest.raises(BadLevel):
        one_n(3, 3, 2, 2)
    with pytest.raises(BadLevel):
        one_n(10, 3, 2, 2)
    with pytest.raises(BadLevel):
        one_n(5, 3, 2, 2)


def test_char_series_integer_powers():
    f = char_series(7, 3, 5, 4)
    for k in range(-6, 15):
        assert sp_k(k, f) == PrecInt(3, 4, pow(7, k, 3 ** 5))
    g = char_series(2, 5, 3, 3)
    for k in range(-4, 25):
        assert sp_k(k, g) == PrecInt(5, 3, pow(2, k, 5 ** 3))


def test_char_series_matches_character_eval():
    # series route versus the Teichmuller-projection route
    p, r, d = 3, 5, 4
    rng = random.Random(11)
    for _ in range(25):
        u = rng.randrange(1, p ** r)
        if u % p == 0:
            continue
        f = char_series(u, p, r, d)
        tame = rng.randrange(p - 1)
        wild = PrecInt(p, r, rng.randrange(p ** r))
        chi = Weight(tame, wild)
        assert sp_k(chi, f) == eval_char(chi, PrecInt(p, r, u))


def test_char_series_guard():
    with pytest.raises(NotAUnit):
        char_series(6, 3, 3, 2)


def test_specialization_is_ring_hom():
    p, r, d = 3, 4, 3
    rng = random.Random(5)
    for _ in range(10):
        f = rand_fn(rng, p, r, d)
        g = rand_fn(rng, p, r, d)
        for k in (0, 2, 5, 9):
            assert sp_k(k, f * g) == sp_k(k, f) * sp_k(k, g)
            assert sp_k(k, f + g) == sp_k(k, f) + sp_k(k, g)


def test_act_identity():
    p, r, d = 3, 3, 2
    rng = random.Random(2)
    fam = rand_fam(rng, p, r, d, 3, 3 + family_tail(p, r, d))
    out = act_family(PadicMat.identity(p, r), fam)
    assert out.agrees(fam, len(out.coords))


def test_act_diagonal():
    p, r, d = 3, 3, 2
    M = p ** r
    rng = random.Random(3)
    fam = rand_fam(rng, p, r, d, 3, 3 + family_tail(p, r, d))
    for u in (4, 7, 11):
        out = act_family(PadicMat(p, r, 1, 0, 0, u), fam)
        cs = char_series(u, p, r, d)
        uinv = pow(u, -1, M)
        for i in range(len(out.coords)):
            rhs = cs * fam.coords[i].scale(pow(uinv, 2 + i, M))
            assert out.coords[i] == rhs


def test_act_up_shape_closed_form():
    # a = p, c = 0 forces h = j in the double sum, leaving an exact
    # lower-triangular expression independent of the weight variable
    p, r, d = 3, 3, 2
    M = p ** r
    rng = random.Random(7)
    for theta in range(p):
        fam = rand_fam(rng, p, r, d, 4, 4 + family_tail(p, r, d))
        out = act_family(PadicMat(p, r, p, -theta, 0, 1), fam)
        for i in range(len(out.coords)):
            rhs = WeightFn.zero(p, r, d)
            for j in range(i + 1):
                scal = math.comb(i, j) * pow(p, j, M) * pow(-theta, i - j, M)
                rhs = rhs + fam.coords[j].scale(scal)
            assert out.coords[i] == rhs


def test_act_unipotent_closed_form():
    p, r, d = 3, 3, 2
    rng = random.Random(8)
    fam = rand_fam(rng, p, r, d, 4, 4 + family_tail(p, r, d))
    out = act_family(PadicMat(p, r, 1, 1, 0, 1), fam)
    for i in range(len(out.coords)):
        rhs = WeightFn.zero(p, r, d)
        for j in range(i + 1):
            rhs = rhs + fam.coords[j].scale(math.comb(i, j))
        assert out.coords[i] == rhs


def test_act_width_guard():
    p, r, d = 3, 2, 2
    rng = random.Random(9)
    fam = rand_fam(rng, p, r, d, 3, 3 + family_tail(p, r, d) - 1)
    with pytest.raises(WidthInsufficient):
        act_family(PadicMat.identity(p, r), fam)


def test_intertwines_single_weight_action():
    # family action, then specialize at k == specialize, then weight k-2 action
    p, r, d = 3, 4, 3
    rr = min(r, d)
    tail = family_tail(p, r, d)
    rng = random.Random(13)
    mats = [PadicMat(p, r, 2, 1, 3, 5), PadicMat(p, r, 1, 0, 3, 1),
            PadicMat(p, r, 4, 2, 6, 7)]
    for k in range(2, 8):
        fam = rand_fam(rng, p, r, d, 3, 3 + tail)
        for mat in mats:
            left = sp_vector(k, act_family(mat, fam))
            mat_rr = PadicMat(p, rr, mat.a, mat.b, mat.c, mat.d)
            right = act_universal(mat_rr, sp_vector(k, fam))
            assert left.agrees(right, 3)


def test_trunc_complementary():
    p, r, d = 3, 2, 2
    rng = random.Random(4)
    fam = rand_fam(rng, p, r, d, 4, 8)
    for k0 in (2, 3, 5):
        lo = trunc_minus(k0, fam)
        hi = trunc_plus(k0, fam)
        assert (lo + hi).agrees(fam, 8)
        assert trunc_minus(k0, lo).agrees(lo, 8)
        assert trunc_plus(k0, hi).agrees(hi, 8)
        assert all(c.is_zero() for c in trunc_plus(k0, lo).coords)
        assert all(lo.coords[i].is_zero() for i in range(k0 - 1, 8))
        assert all(hi.coords[i].is_zero() for i in range(k0 - 1))


def test_trunc_commutes_with_scalars():
    p, r, d = 3, 2, 2
    rng = random.Random(6)
    fam = rand_fam(rng, p, r, d, 4, 6)
    s = rand_fn(rng, p, r, d)
    lhs = trunc_minus(3, fam.scale_fn(s))
    rhs = trunc_minus(3, fam).scale_fn(s)
    assert lhs.agrees(rhs, 6)


def test_family_tail_values():
    assert family_tail(3, 4, 3) == 21
    assert family_tail(5, 2, 2) == 20
    assert family_tail(3, 2, 2) < family_tail(3, 3, 2)
