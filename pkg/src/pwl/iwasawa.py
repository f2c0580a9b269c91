"""Analytic functions on the p-adic weight space and the family action.

The weight space splits into p(p-1) branches indexed by the residue of the
weight modulo p(p-1); an analytic function is stored as one truncated power
series per branch, in the variable X centered at that residue, with
coefficients mod p^r and degree < d (joint precision ideal (p^r, X^d)).

z() is the tautological weight, e_branch the branch idempotents, one_n(N)
interpolates k -> (1+N)^k, char_series(u) interpolates k -> u^k for a unit
u.  sp_k evaluates at an integer weight k (or a Weight): branch k mod
p(p-1), X = k minus the branch residue; the substituted value has
valuation >= 1, so the result carries precision min(r, d).

A FamilyVec is a coordinate window whose entries are such functions;
act_family applies the weight-minus-2 family of symmetric-power actions.
Coordinate j influences output i only when j - i < p(r + d), so each
application consumes family_tail(p, r, d) stored coordinates.
trunc_minus / trunc_plus are the complementary coordinate truncations at a
cut k0 (coordinates below / from k0 - 1).
"""

import math

from .errors import BadLevel, NotAUnit, WidthInsufficient
from .padic import PrecInt, Weight, reduce_weight, unit_project, vp, vp_factorial
from .sympow import SeqVec


def branch_count(p):
    return p * (p - 1)


def family_tail(p, r, d):
    """Stored coordinates consumed by one family action."""
    return p * (r + d)


class WeightFn:
    """Analytic function on the weight space mod (p^r, X^d)."""

    __slots__ = ("p", "r", "d", "comps")

    def __init__(self, p, r, d, comps):
        nb = branch_count(p)
        assert len(comps) == nb and all(len(c) == d for c in comps)
        M = p ** r
        self.p, self.r, self.d = p, r, d
        self.comps = [[x % M for x in c] for c in comps]

    @classmethod
    def zero(cls, p, r, d):
        return cls(p, r, d, [[0] * d for _ in range(branch_count(p))])

    @classmethod
    def const(cls, value, p, r, d):
        comps = [[0] * d for _ in range(branch_count(p))]
        for c in comps:
            c[0] = value
        return cls(p, r, d, comps)

    def is_zero(self):
        return all(x == 0 for c in self.comps for x in c)

    def __add__(self, other):
        self._compat(other)
        return WeightFn(self.p, self.r, self.d,
                        [[x + y for x, y in zip(a, b)]
                         for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        self._compat(other)
        return WeightFn(self.p, self.r, self.d,
                        [[x - y for x, y in zip(a, b)]
                         for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return WeightFn(self.p, self.r, self.d,
                        [[-x for x in c] for c in self.comps])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._compat(other)
        M = self.p ** self.r
        return WeightFn(self.p, self.r, self.d,
                        [_series_mul(a, b, M, self.d)
                         for a, b in zip(self.comps, other.comps)])

    __rmul__ = __mul__

    def scale(self, k):
        return WeightFn(self.p, self.r, self.d,
                        [[x * k for x in c] for c in self.comps])

    def _compat(self, other):
        assert (self.p, self.d) == (other.p, other.d)
        assert self.r == other.r

    def __eq__(self, other):
        if not isinstance(other, WeightFn):
            return NotImplemented
        if (self.p, self.d) != (other.p, other.d):
            return False
        m = self.p ** min(self.r, other.r)
        return all((x - y) % m == 0
                   for a, b in zip(self.comps, other.comps)
                   for x, y in zip(a, b))

    def __repr__(self):
        return f"WeightFn(p={self.p}, mod ({self.p}^{self.r}, X^{self.d}))"


def _series_mul(a, b, M, d):
    out = [0] * d
    for i, ai in enumerate(a):
        if ai:
            for j in range(d - i):
                bj = b[j]
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % M
    return out


def z(p, r, d):
    """The tautological weight: branch zeta is zeta + X."""
    comps = []
    for zeta in range(branch_count(p)):
        c = [0] * d
        c[0] = zeta
        if d > 1:
            c[1] = 1
        comps.append(c)
    return WeightFn(p, r, d, comps)


def e_branch(zeta, p, r, d):
    """Idempotent of the branch zeta."""
    comps = [[0] * d for _ in range(branch_count(p))]
    comps[zeta % branch_count(p)][0] = 1
    return WeightFn(p, r, d, comps)


def _log_one_unit(u, p, R):
    """log of a one-unit mod p^R via the alternating series."""
    assert u % p == 1
    x = (u - 1) % p ** R
    acc = 0
    m = 1
    # v_p(m) <= 7 in this loop for any practical R (3^8 > R + 8)
    assert 3 ** 8 > R + 8
    while m <= R + 8:
        v = vp(m, p) if m % p == 0 else 0
        if m - v < R:
            xm = pow(x, m, p ** (R + v))
            q = xm // p ** v
            term = q * pow(m // p ** v, -1, p ** R) % p ** R
            acc = (acc - term if m % 2 == 0 else acc + term) % p ** R
        m += 1
    return acc


def _exp_coeffs(log_val, p, r, d):
    # coefficients L^h / h! mod p^r for h < d; log_val given mod p^(r + v_p((d-1)!))
    out = [1 % p ** r]
    for h in range(1, d):
        vh = vp_factorial(h, p)
        lh = pow(log_val, h, p ** (r + vh))
        q = lh // p ** vh
        unit = math.factorial(h) // p ** vh
        out.append(q * pow(unit, -1, p ** r) % p ** r)
    return out


def one_n(N, p, r, d):
    """The function k -> (1+N)^k: branch zeta carries (1+N)^zeta exp(X log(1+N))."""
    if N < 5 or N % p != 0:
        raise BadLevel(f"need p | N and N >= 5, got N={N}, p={p}")
    R = r + vp_factorial(d - 1, p)
    L = _log_one_unit((1 + N) % p ** R, p, R)
    coeffs = _exp_coeffs(L, p, r, d)
    M = p ** r
    comps = []
    for zeta in range(branch_count(p)):
        s = pow(1 + N, zeta, M)
        comps.append([s * c % M for c in coeffs])
    return WeightFn(p, r, d, comps)


def char_series(u, p, r, d):
    """The function k -> u^k for a unit u: branch zeta is u^zeta exp(X log<u>)."""
    u0 = u.res if isinstance(u, PrecInt) else u % p ** r
    if u0 % p == 0:
        raise NotAUnit(f"{u0} is divisible by {p}")
    R = r + vp_factorial(d - 1, p)
    one_unit = unit_project(PrecInt(p, R, u0))
    L = _log_one_unit(one_unit.res, p, R)
    coeffs = _exp_coeffs(L, p, r, d)
    M = p ** r
    comps = []
    for zeta in range(branch_count(p)):
        s = pow(u0, zeta, M)
        comps.append([s * c % M for c in coeffs])
    return WeightFn(p, r, d, comps)


def sp_k(k, fn):
    """Evaluate at an integer weight (or Weight); result precision min(r, d).

    Reads the branch of k mod p(p-1) at X = k minus the branch residue; the
    substituted value has valuation >= 1.
    """
    p, r, d = fn.p, fn.r, fn.d
    out_r = min(r, d)
    if isinstance(k, Weight):
        zeta = reduce_weight(k, 1)
        x0 = (k.wild.res - zeta) % p ** r
        out_r = min(out_r, k.wild.r)
    else:
        zeta = k % branch_count(p)
        x0 = (k - zeta) % p ** r
    assert x0 % p == 0
    M = p ** r
    acc, xp = 0, 1
    for h in range(d):
        acc = (acc + fn.comps[zeta][h] * xp) % M
        xp = xp * x0 % M
    return PrecInt(p, out_r, acc)


class FamilyVec:
    """Coordinate window with WeightFn entries; surplus beyond out_width is
    working room consumed by act_family."""

    __slots__ = ("p", "r", "d", "out_width", "coords")

    def __init__(self, p, r, d, out_width, coords):
        if len(coords) < out_width:
            raise WidthInsufficient(
                f"{len(coords)} coordinates cannot certify width {out_width}")
        assert all(isinstance(c, WeightFn) for c in coords)
        self.p, self.r, self.d = p, r, d
        self.out_width = out_width
        self.coords = list(coords)

    @classmethod
    def zero(cls, p, r, d, out_width, width):
        return cls(p, r, d, out_width,
                   [WeightFn.zero(p, r, d) for _ in range(width)])

    def width(self):
        return len(self.coords)

    def __add__(self, other):
        n = min(len(self.coords), len(other.coords))
        return FamilyVec(self.p, self.r, self.d,
                         min(self.out_width, other.out_width),
                         [x + y for x, y in zip(self.coords[:n], other.coords[:n])])

    def __sub__(self, other):
        n = min(len(self.coords), len(other.coords))
        return FamilyVec(self.p, self.r, self.d,
                         min(self.out_width, other.out_width),
                         [x - y for x, y in zip(self.coords[:n], other.coords[:n])])

    def __neg__(self):
        return FamilyVec(self.p, self.r, self.d, self.out_width,
                         [-x for x in self.coords])

    def scale_fn(self, fn):
        """Multiply every coordinate by a WeightFn scalar."""
        return FamilyVec(self.p, self.r, self.d, self.out_width,
                         [fn * x for x in self.coords])

    def agrees(self, other, width):
        return all(x == y for x, y in
                   zip(self.coords[:width], other.coords[:width]))

    def __repr__(self):
        return (f"FamilyVec(out={self.out_width}, stored={len(self.coords)}, "
                f"mod ({self.p}^{self.r}, X^{self.d}))")


_FALL_CACHE = {}


def _falling_z(p, r, d, i, L):
    """prod_{m=i}^{i+L-1} (z - 2 - m) as raw branch lists, cached."""
    key = (p, r, d, i, L)
    got = _FALL_CACHE.get(key)
    if got is not None:
        return got
    M = p ** r
    if L == 0:
        comps = [[1 % M] + [0] * (d - 1) for _ in range(branch_count(p))]
    else:
        prev = _falling_z(p, r, d, i, L - 1)
        m_last = i + L - 1
        comps = []
        for zeta in range(branch_count(p)):
            c0 = (zeta - 2 - m_last) % M
            q = prev[zeta]
            out = [0] * d
            for k in range(d):
                out[k] = (c0 * q[k] + (q[k - 1] if k else 0)) % M
            comps.append(out)
    _FALL_CACHE[key] = comps
    return comps


def act_family(mat, fam):
    """Apply the weight-minus-2 family action; consumes family_tail coords.

    Same double sum as the single-weight action with the tautological
    weight z - 2 in the falling products and d-powers carried by
    char_series; the first (stored - family_tail) output coordinates are
    certified mod (p^r, X^d).
    """
    p, r, dd = fam.p, fam.r, fam.d
    t = family_tail(p, r, dd)
    width = len(fam.coords)
    new_len = width - t
    if new_len < fam.out_width:
        raise WidthInsufficient(
            f"need {fam.out_width + t} stored coordinates, have {width}")
    M = p ** r
    a0, b0, c0, d0 = mat.a % M, mat.b % M, mat.c % M, mat.d % M
    nb = branch_count(p)
    G = char_series(d0, p, r, dd).comps
    dinv = pow(d0, -1, M)
    dinvpow = [1] * (2 * width + 3)
    for s in range(1, 2 * width + 3):
        dinvpow[s] = dinvpow[s - 1] * dinv % M
    cf = _cf_table(c0, width, p, r)
    apow = [pow(a0, h, M) for h in range(width + 1)]
    bpow = [pow(b0, h, M) for h in range(width + 1)]
    comb = math.comb
    out = []
    for i in range(new_len):
        S = [[0] * dd for _ in range(nb)]
        for j in range(width):
            Fj = fam.coords[j].comps
            if fam.coords[j].is_zero():
                continue
            Q = [[0] * dd for _ in range(nb)]
            any_q = False
            for h in range(min(i, j) + 1):
                L = j - h
                scal = (comb(i, h) % M * apow[h] % M * bpow[i - h] % M
                        * cf[L] % M * dinvpow[2 + i + j - h] % M)
                if scal == 0:
                    continue
                any_q = True
                PL = _falling_z(p, r, dd, i, L)
                for zeta in range(nb):
                    qz, pz = Q[zeta], PL[zeta]
                    for k in range(dd):
                        qz[k] = (qz[k] + scal * pz[k]) % M
            if not any_q:
                continue
            for zeta in range(nb):
                sz = S[zeta]
                prod = _series_mul(Q[zeta], Fj[zeta], M, dd)
                for k in range(dd):
                    sz[k] = (sz[k] + prod[k]) % M
        coord = [_series_mul(G[zeta], S[zeta], M, dd) for zeta in range(nb)]
        out.append(WeightFn(p, r, dd, coord))
    return FamilyVec(p, r, dd, fam.out_width, out)


def _cf_table(c, jmax, p, r):
    # c^m / m! mod p^r (c divisible by p, quotient integral)
    M = p ** r
    cf = [1 % M]
    if c % M == 0:
        return cf + [0] * jmax
    vc = vp(c % M, p)
    u = (c % M) // p ** vc
    for m in range(1, jmax + 1):
        vfac = vp_factorial(m, p)
        e = m * vc - vfac
        if e >= r:
            cf.append(0)
            continue
        unit = math.factorial(m) // p ** vfac
        cf.append(pow(u, m, M) * pow(p, e, M) % M * pow(unit, -1, M) % M)
    return cf


def sp_vector(k, fam):
    """Specialize every coordinate at weight k, landing at weight k - 2."""
    rr = min(fam.r, fam.d)
    chi = Weight.of_int(k - 2, fam.p, rr)
    return SeqVec(chi, fam.out_width, [sp_k(k, c).res for c in fam.coords])


def trunc_minus(k0, fam):
    """Keep coordinates 0..k0-2, zero the rest."""
    assert k0 >= 2
    zero = WeightFn.zero(fam.p, fam.r, fam.d)
    coords = [c if i <= k0 - 2 else zero for i, c in enumerate(fam.coords)]
    return FamilyVec(fam.p, fam.r, fam.d, fam.out_width, coords)


def trunc_plus(k0, fam):
    """Zero coordinates 0..k0-2, keep the rest."""
    assert k0 >= 2
    zero = WeightFn.zero(fam.p, fam.r, fam.d)
    coords = [zero if i <= k0 - 2 else c for i, c in enumerate(fam.coords)]
    return FamilyVec(fam.p, fam.r, fam.d, fam.out_width, coords)
