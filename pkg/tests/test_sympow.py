import math
import random

import pytest

from pwl.errors import BadRange, BadWeight, CongruenceViolated, WidthInsufficient
from pwl.matrices import IntMat, PadicMat
from pwl.padic import PrecInt, Weight
from pwl.sympow import (
    SeqVec,
    SymVec,
    act_sym,
    act_universal,
    binom_identity,
    congr_project,
    specialize,
    sym_matrix,
    tail_width,
)


def rand_monoid_mat(rng, p, r):
    M = p ** r
    while True:
        d = rng.randrange(M)
        if d % p:
            break
    return PadicMat(p, r, rng.randrange(M), rng.randrange(M),
                    p * rng.randrange(M // p), d)


def rand_seq(rng, chi, out_width, width):
    M = chi.p ** chi.r
    return SeqVec(chi, out_width, [rng.randrange(M) for _ in range(width)])


class TestActSym:
    def test_identity(self):
        v = SymVec(3, 3, 4, [1, 2, 3, 4, 5])
        assert act_sym(IntMat.identity(), v) == v

    def test_diagonal_scales(self):
        # diag(a, d): e_i -> a^i d^(n-i) e_i
        p, r, n = 5, 3, 3
        m = IntMat(2, 0, 0, 3)
        v = SymVec(p, r, n, [1, 1, 1, 1])
        got = act_sym(m, v)
        want = [pow(2, i, 125) * pow(3, n - i, 125) % 125 for i in range(n + 1)]
        assert got.coords == want

    def test_upper_triangular_binomial(self):
        # (1 b; 0 1): coordinate i of the image is sum_j C(i,j) b^(i-j) v_j
        p, r, n = 3, 4, 5
        b = 7
        m = IntMat(1, b, 0, 1)
        rng = random.Random(0)
        v = SymVec(p, r, n, [rng.randrange(81) for _ in range(n + 1)])
        got = act_sym(m, v)
        M = p ** r
        for i in range(n + 1):
            want = sum(math.comb(i, j) * pow(b, i - j, M) * v.coords[j]
                       for j in range(i + 1)) % M
            assert got.coords[i] == want

    def test_monomial_cross_check(self):
        # compare against direct polynomial substitution with exact rationals
        from fractions import Fraction
        p, r, n = 5, 4, 4
        rng = random.Random(1)
        for _ in range(10):
            a, b, c, d = (rng.randrange(-5, 6) for _ in range(4))
            if a * d - b * c <= 0:
                continue
            m = IntMat(a, b, c, d)
            v = SymVec(p, r, n, [rng.randrange(p ** r) for _ in range(n + 1)])
            # monomial coords of v: x_i = C(n,i) v_i on T1^i T2^(n-i)
            mono = [Fraction(math.comb(n, i) * v.coords[i]) for i in range(n + 1)]
            # substitute T1 -> a T1 + c T2, T2 -> b T1 + d T2
            out = [Fraction(0)] * (n + 1)
            for i in range(n + 1):
                # (a T1 + c T2)^i (b T1 + d T2)^(n-i)
                poly = [Fraction(0)] * (n + 1)  # index = T1-degree
                for s in range(i + 1):
                    for t in range(n - i + 1):
                        poly[s + t] += (math.comb(i, s) * a ** s * c ** (i - s)
                                        * math.comb(n - i, t) * b ** t
                                        * d ** (n - i - t))
                for k in range(n + 1):
                    out[k] += mono[i] * poly[k]
            want = [int(out[k] / math.comb(n, k)) % p ** r for k in range(n + 1)]
            assert act_sym(m, v).coords == want

    def test_composition(self):
        p, r, n = 3, 3, 6
        rng = random.Random(2)
        for _ in range(20):
            m1 = rand_monoid_mat(rng, p, r)
            m2 = rand_monoid_mat(rng, p, r)
            v = SymVec(p, r, n, [rng.randrange(27) for _ in range(n + 1)])
            assert act_sym(m1 * m2, v) == act_sym(m1, act_sym(m2, v))


class TestActUniversal:
    def test_identity_action(self):
        p, r = 3, 3
        chi = Weight.of_int(4, p, r)
        rng = random.Random(3)
        seq = rand_seq(rng, chi, 2, 2 + tail_width(p, r))
        got = act_universal(PadicMat.identity(p, r), seq)
        assert got.coords[:2] == seq.coords[:2]

    def test_diagonal_single_term(self):
        # diag(a, d) with c = b = 0: coordinate i scaled by a^i d^(chi - 2i)
        p, r = 5, 3
        chi = Weight.wild_only(7, p, r)
        m = PadicMat(p, r, 2, 0, 0, 3)
        rng = random.Random(4)
        width = 3 + tail_width(p, r)
        seq = rand_seq(rng, chi, 3, width)
        got = act_universal(m, seq)
        from pwl.padic import eval_char
        M = p ** r
        for i in range(3):
            # j = h = i survives: scale a^i d^(chi - i)
            scale = pow(2, i, M) * eval_char(chi.shift(i), PrecInt(p, r, 3)).res
            assert got.coords[i] == scale * seq.coords[i] % M

    def test_unipotent_binomial(self):
        # (1 b; 0 1): same binomial formula as the finite symmetric power
        p, r = 3, 4
        chi = Weight.wild_only(5, p, r)
        b = 4
        m = PadicMat(p, r, 1, b, 0, 1)
        rng = random.Random(5)
        width = 4 + tail_width(p, r)
        seq = rand_seq(rng, chi, 4, width)
        got = act_universal(m, seq)
        M = p ** r
        for i in range(4):
            want = sum(math.comb(i, j) * pow(b, i - j, M) * seq.coords[j]
                       for j in range(i + 1)) % M
            assert got.coords[i] == want

    def test_width_contract(self):
        p, r = 3, 3
        chi = Weight.of_int(2, p, r)
        seq = SeqVec(chi, 2, [1] * (1 + tail_width(p, r)))
        with pytest.raises(WidthInsufficient):
            act_universal(PadicMat.identity(p, r), seq)

    def test_action_law_smoke(self):
        p, r = 3, 3
        t = tail_width(p, r)
        chi = Weight.wild_only(1 + p, p, r)
        rng = random.Random(6)
        for _ in range(5):
            m1 = rand_monoid_mat(rng, p, r)
            m2 = rand_monoid_mat(rng, p, r)
            seq = rand_seq(rng, chi, 3, 3 + 2 * t)
            lhs = act_universal(m1 * m2, seq)
            rhs = act_universal(m1, act_universal(m2, seq))
            assert lhs.agrees(rhs, 3)


class TestSpecialize:
    def test_equivariance(self):
        p, r = 3, 4
        t = tail_width(p, r)
        rng = random.Random(7)
        for n in range(0, 7):
            chi = Weight.of_int(n, p, r)
            for _ in range(5):
                m = rand_monoid_mat(rng, p, r)
                seq = rand_seq(rng, chi, n + 1, n + 1 + t)
                lhs = specialize(act_universal(m, seq), n)
                rhs = act_sym(m, specialize(seq, n))
                assert lhs == rhs

    def test_weight_mismatch(self):
        chi = Weight.of_int(3, 3, 2)
        seq = SeqVec(chi, 5, [0] * 10)
        with pytest.raises(BadWeight):
            specialize(seq, 4)

    def test_width_guard(self):
        chi = Weight.of_int(6, 3, 2)
        seq = SeqVec(chi, 3, [0] * 10)
        with pytest.raises(WidthInsufficient):
            specialize(seq, 6)


class TestCongrProject:
    def test_equivariance(self):
        p = 3
        rng = random.Random(8)
        for r in (1, 2):
            step = p ** (r - 1) * (p - 1)
            for (n0, n1) in [(1, 1 + step), (2, 2 + 2 * step), (0, step)]:
                for _ in range(5):
                    m = rand_monoid_mat(rng, p, r + 2)
                    v = SymVec(p, r + 2, n1,
                               [rng.randrange(p ** (r + 2)) for _ in range(n1 + 1)])
                    lhs = congr_project(r, n1, n0, act_sym(m, v))
                    rhs = act_sym(m, congr_project(r, n1, n0, v))
                    assert lhs.reduce(r) == rhs.reduce(r)

    def test_congruence_guard(self):
        v = SymVec(3, 2, 5, [0] * 6)
        with pytest.raises(CongruenceViolated):
            congr_project(2, 5, 2, v)  # 3 is not a multiple of 3*2

    def test_range_guard(self):
        v = SymVec(3, 2, 2, [0] * 3)
        with pytest.raises(BadRange):
            congr_project(1, 2, 4, v)


class TestBinomIdentity:
    def test_integer_exhaustive_small(self):
        for n in range(-3, 8):
            for i in range(6):
                for j in range(6):
                    for h in range(min(i, j) + 1):
                        lhs, rhs = binom_identity(n, i, j, h)
                        assert lhs == rhs

    def test_padic(self):
        rng = random.Random(9)
        for _ in range(20):
            p = rng.choice([3, 5])
            n = PrecInt(p, 8, rng.randrange(p ** 8))
            i, j = rng.randrange(8), rng.randrange(8)
            h = rng.randrange(min(i, j) + 1) if min(i, j) >= 0 else 0
            lhs, rhs = binom_identity(n, i, j, h)
            assert lhs == rhs

    def test_single_term_case(self):
        # j = h: the sum collapses to binom(n-h, i-h) C(h, h)
        lhs, rhs = binom_identity(10, 4, 2, 2)
        assert lhs == rhs == binom_identity(10, 4, 2, 2)[1]

    def test_range_guard(self):
        with pytest.raises(BadRange):
            binom_identity(5, 2, 3, 4)


class TestSymMatrixShape:
    def test_entries_integral(self):
        m = sym_matrix(3, IntMat(1, 1, 2, 3), 5, 2)
        assert len(m) == 4 and all(len(row) == 4 for row in m)
        assert all(0 <= x < 25 for row in m for x in row)
