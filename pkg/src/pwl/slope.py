"""Finite-slope machinery: Newton polygons, slope factors, projectors.

Working over Z/p^r, a coefficient congruent to 0 only reveals valuation
>= r, so polygon points carry a censored flag and anything whose hull
touches a censored point is reported as ambiguous rather than asserted.

slope_factor splits a monic polynomial into the part with root valuation
< s and the rest: the s = 1 split reduces mod p, peels the power of X,
and lifts the coprime factorization by quadratic Hensel iteration (no
precision loss); deeper cuts substitute X -> pX, divide by the forced
power of p (losing that much precision, which is tracked), and recurse.

slope_projector turns the split into an idempotent pi = (v R)(M) from a
Bezout identity u Q + v R = 1 solved as a linear system; for s = 1 the
factors are coprime mod p and the system is always solvable, while for
deeper cuts an unsolvable system raises AmbiguousAtPrecision instead of
guessing.  ps_tp_inv restricts M to the image of pi and returns
p^s * (block inverse), the scaled inverse whose powers contract; it uses
the division-free adjugate so only the determinant's unit part is ever
inverted.

verify_truncate_lemma is a randomized contract checker for the
interaction of coordinate truncation with the family action: group
elements move the low window into the ideal N * (weight - k0), and the
p-translate lands the low window in p^s * (weight - k0) and the high
window in p^s; ideal membership is decided exactly by linear solves.
"""

import random
from fractions import Fraction

from .errors import (AmbiguousAtPrecision, ContractViolated, NotInvertible,
                     PrecisionExhausted)
from .gamma1 import free_basis
from .iwasawa import FamilyVec, WeightFn, act_family, branch_count, family_tail
from .linalg import charpoly_mod, identity_mat, invert_mod, mat_mul, mat_vec, smith_mod
from .matrices import PadicMat
from .padic import vp


def char_poly(A, p, r):
    """Monic characteristic polynomial mod p^r, ascending coefficients."""
    return charpoly_mod(A, p ** r)


class NewtonPolygon:
    """Lower hull of the coefficient valuations of a monic polynomial."""

    __slots__ = ("p", "r", "points", "censored", "vertices", "segments",
                 "ambiguous")

    def __init__(self, p, r, points, censored, vertices, segments, ambiguous):
        self.p, self.r = p, r
        self.points = points
        self.censored = censored
        self.vertices = vertices
        self.segments = segments
        self.ambiguous = ambiguous

    def root_valuations(self):
        """(valuation, multiplicity) pairs, one per segment."""
        return [(-s, length) for s, length in self.segments]

    def slope_multiplicity(self, val):
        for v, length in self.root_valuations():
            if v == val:
                return length
        return 0


def newton_polygon(coeffs, p, r):
    n = len(coeffs) - 1
    M = p ** r
    points = []
    censored = []
    for i, c in enumerate(coeffs):
        if c % M == 0:
            points.append((i, r))
            censored.append(True)
        else:
            points.append((i, min(vp(c, p), r)))
            censored.append(False)
    hull = [points[0]]
    for pt in points[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # pop unless the slope strictly increases through the middle
            if (y2 - y1) * (pt[0] - x2) >= (pt[1] - y2) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segments.append((Fraction(y2 - y1, x2 - x1), x2 - x1))
    on_hull = set()
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        for i in range(x1, x2 + 1):
            if (points[i][1] - y1) * (x2 - x1) == (y2 - y1) * (i - x1):
                on_hull.add(i)
    ambiguous = sorted(i for i in on_hull if censored[i])
    return NewtonPolygon(p, r, points, censored, hull, segments, ambiguous)


def _poly_trim(f, M):
    f = [c % M for c in f]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _poly_mul(f, g, M):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = (out[i + j] + a * b) % M
    return out


def _poly_add(f, g, M):
    n = max(len(f), len(g))
    return [((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % M
            for i in range(n)]


def _poly_scale(f, c, M):
    return [x * c % M for x in f]


def _poly_divmod(f, g, M):
    """Division by a polynomial with unit leading coefficient."""
    f = list(f)
    dg = len(g) - 1
    lead_inv = pow(g[-1], -1, M)
    q = [0] * max(1, len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] * lead_inv % M
        if c:
            q[i - dg] = c
            for j in range(dg + 1):
                f[i - dg + j] = (f[i - dg + j] - c * g[j]) % M
    return _poly_trim(q, M), _poly_trim(f[:dg] if dg else [0], M)


def _poly_gcd_bezout_modp(f, g, p):
    """(gcd, u, v) with u f + v g = gcd over the prime field."""
    r0, r1 = _poly_trim(f, p), _poly_trim(g, p)
    u0, u1 = [1], [0]
    v0, v1 = [0], [1]
    while r1 != [0]:
        q, rem = _poly_divmod(r0, r1, p)
        r0, r1 = r1, _poly_trim(rem, p)
        u0, u1 = u1, _poly_trim(_poly_add(u0, _poly_scale(_poly_mul(q, u1, p), -1, p), p), p)
        v0, v1 = v1, _poly_trim(_poly_add(v0, _poly_scale(_poly_mul(q, v1, p), -1, p), p), p)
    return r0, u0, v0


def _hensel_pair(P, A, B, u, v, p, r):
    """Lift P = A B with u A + v B = 1 from mod p to mod p^r."""
    m = 1
    M = p ** r
    while m < r:
        m2 = min(2 * m, r)
        Mm = p ** m2
        e = _poly_add(P, _poly_scale(_poly_mul(A, B, Mm), -1, Mm), Mm)
        ve = _poly_mul(v, e, Mm)
        qa, ra = _poly_divmod(ve, A, Mm)
        A = _poly_trim(_poly_add(A, ra, Mm), Mm)
        B = _poly_trim(_poly_add(B, _poly_add(_poly_mul(u, e, Mm),
                                              _poly_mul(qa, B, Mm), Mm), Mm), Mm)
        g = _poly_add(_poly_add(_poly_mul(u, A, Mm), _poly_mul(v, B, Mm), Mm),
                      [-1], Mm)
        u = _poly_trim(_poly_add(u, _poly_scale(_poly_mul(u, g, Mm), -1, Mm), Mm), Mm)
        v = _poly_trim(_poly_add(v, _poly_scale(_poly_mul(v, g, Mm), -1, Mm), Mm), Mm)
        m = m2
    return _poly_trim(A, M), _poly_trim(B, M), u, v


def _unit_root_split(P, p, r):
    """P = low * unitpart mod p^r with low monic collecting roots of
    positive valuation (reduction X^w) and unitpart the coprime rest."""
    M = p ** r
    Pb = [c % p for c in P]
    w = 0
    while w < len(Pb) - 1 and Pb[w] == 0:
        w += 1
    if w == 0:
        return [1], [c % M for c in P]
    if w == len(P) - 1:
        return [c % M for c in P], [1]
    A0 = [0] * w + [1]
    B0 = _poly_trim(Pb[w:], p)
    # coprime since B0 has a nonzero constant term mod p
    g0, u0, v0 = _poly_gcd_bezout_modp(A0, B0, p)
    assert len(g0) == 1 and g0[0] % p != 0
    scal = pow(g0[0], -1, p)
    u0 = _poly_scale(u0, scal, p)
    v0 = _poly_scale(v0, scal, p)
    A, _, _, _ = _hensel_pair([c % M for c in P], A0, B0, u0, v0, p, r)
    assert len(A) == w + 1 and A[-1] == 1
    B, rem = _poly_divmod([c % M for c in P], A, M)
    assert rem == [0]
    return A, B


def slope_factor(P, s, p, r):
    """(Q, R, loss): P = Q R mod p^(r - loss), Q holding root vals < s.

    Both factors are monic; s must be a positive integer.
    """
    assert s >= 1 and P[-1] % p ** r == 1
    if r < 1:
        raise PrecisionExhausted("no working digits left for a slope split")
    low, unitpart = _unit_root_split(P, p, r)
    if s == 1:
        return unitpart, low, 0
    n1 = len(low) - 1
    if n1 == 0:
        return unitpart, [1], 0
    if r - n1 < 1:
        raise PrecisionExhausted(
            f"scaling by p^{n1} exhausts precision {r}")
    M2 = p ** (r - n1)
    scaled = []
    for i, c in enumerate(low):
        num = c % p ** r * p ** i
        if num % p ** n1 != 0:
            raise AmbiguousAtPrecision(
                "positive-valuation block has slopes below 1; "
                "integer cuts cannot separate it")
        scaled.append(num // p ** n1 % M2)
    Qs, Rs, loss2 = slope_factor(scaled, s - 1, p, r - n1)
    loss = n1 + loss2
    Mq = p ** (r - loss)
    Q1 = [c * p ** (len(Qs) - 1 - i) % Mq for i, c in enumerate(Qs)]
    R1 = [c * p ** (len(Rs) - 1 - i) % Mq for i, c in enumerate(Rs)]
    Q = _poly_mul(unitpart, Q1, Mq)
    return _poly_trim(Q, Mq), R1, loss


def _bezout_pair(Q, R, p, r):
    """u, v with u Q + v R = 1 mod p^r via the resultant-style system."""
    n = (len(Q) - 1) + (len(R) - 1)
    if n == 0:
        return [1], [0]
    cols = []
    for i in range(len(R) - 1):          # u X^i Q
        col = [0] * n
        for j, c in enumerate(Q):
            if i + j < n:
                col[i + j] = c
        cols.append(col)
    for i in range(len(Q) - 1):          # v X^i R
        col = [0] * n
        for j, c in enumerate(R):
            if i + j < n:
                col[i + j] = c
        cols.append(col)
    mat = [[cols[j][i] for j in range(n)] for i in range(n)]
    rhs = [1] + [0] * (n - 1)
    sol = smith_mod(mat, p, r).solve(rhs)
    if sol is None:
        raise AmbiguousAtPrecision(
            "slope factors are not coprime at this precision")
    u = sol[:len(R) - 1] or [0]
    v = sol[len(R) - 1:] or [0]
    return u, v


def _poly_eval_matrix(f, A, M):
    n = len(A)
    out = [[0] * n for _ in range(n)]
    power = identity_mat(n)
    for c in f:
        if c:
            for i in range(n):
                for j in range(n):
                    out[i][j] = (out[i][j] + c * power[i][j]) % M
        power = mat_mul(power, A, M)
    return out


def slope_projector(A, s, p, r):
    """(pi, rank, prec): idempotent onto the root-valuation < s part of A."""
    P = char_poly(A, p, r)
    Q, R, loss = slope_factor(P, s, p, r)
    prec = r - loss
    u, v = _bezout_pair(Q, R, p, prec)
    M = p ** prec
    pi = _poly_eval_matrix(_poly_mul(v, R, M), A, M)
    pi2 = mat_mul(pi, pi, M)
    if pi2 != pi:
        raise AmbiguousAtPrecision("projector fails to be idempotent")
    return pi, len(Q) - 1, prec


def ps_tp_inv(A, s, p, r):
    """(W, basis, prec): W = p^s * inverse of A on its slope < s part.

    basis columns span the image of the slope projector; W is the matrix
    of p^s A^{-1} on that image in the given basis.
    """
    pi, rank, prec = slope_projector(A, s, p, r)
    if rank == 0:
        raise NotInvertible("no finite-slope part below the requested cut")
    M = p ** prec
    n = len(A)
    sf = smith_mod(pi, p, prec)
    Uinv = invert_mod(sf.U, p, prec)
    cols = [i for i, e in enumerate(sf.exps) if e == 0]
    if len(cols) != rank:
        raise AmbiguousAtPrecision(
            f"projector image has divisors {sf.exps}, expected rank {rank}")
    basis = [[Uinv[i][j] for j in cols] for i in range(n)]       # n x k
    bs = smith_mod(basis, p, prec)
    block = []
    for j in range(rank):
        target = mat_vec(A, [basis[i][j] for i in range(n)], M)
        x = bs.solve(target)
        assert x is not None
        block.append(x)
    M0 = [[block[j][i] for j in range(rank)] for i in range(rank)]
    coeffs = charpoly_mod(M0, M)
    det = (-1) ** rank * coeffs[0] % M
    if det == 0:
        raise NotInvertible("slope block determinant vanishes at this precision")
    vdet = vp(det, p)
    # adjugate via Cayley-Hamilton, no divisions
    adj = [[0] * rank for _ in range(rank)]
    power = identity_mat(rank)
    for i in range(1, len(coeffs)):
        c = coeffs[i]
        for a in range(rank):
            for b in range(rank):
                adj[a][b] = (adj[a][b] + c * power[a][b]) % M
        power = mat_mul(power, M0, M)
    sign = (-1) ** (rank - 1) % M
    adj = [[x * sign % M for x in row] for row in adj]
    check = mat_mul(M0, adj, M)
    assert check == [[det if a == b else 0 for b in range(rank)]
                     for a in range(rank)]
    unit_inv = pow(det // p ** vdet, -1, M)
    out_prec = prec - max(0, vdet - s)
    if out_prec < 1:
        raise PrecisionExhausted("scaled inverse has no certified digits")
    Mo = p ** out_prec
    W = [[0] * rank for _ in range(rank)]
    for a in range(rank):
        for b in range(rank):
            num = adj[a][b] * unit_inv % M * p ** s
            if vdet > s:
                if num % p ** (vdet - s) != 0:
                    raise NotInvertible(
                        "scaled inverse is not integral at this slope")
                num //= p ** (vdet - s)
            W[a][b] = num % Mo
    return W, basis, out_prec


def _ideal_member(series, factor_val, zeta_shift, p, r, d):
    """Is the branch series in p^factor_val * (c + X) with c = zeta_shift?"""
    M = p ** r
    mat = [[0] * d for _ in range(d)]
    for j in range(d):
        mat[j][j] = zeta_shift * p ** factor_val % M
        if j:
            mat[j][j - 1] = p ** factor_val % M
    return smith_mod(mat, p, r).solve([x % M for x in series]) is not None


def verify_truncate_lemma(N, s, k0, p, r, d, trials=20, seed=0, extra=2,
                          word_len=4):
    """Randomized check of the truncation contracts; raises on violation.

    For windows supported in coordinates >= k0 - 1: group elements send
    the low window into N * (weight - k0), and the p-translate sends the
    low window into p^s * (weight - k0) and the high window into p^s.
    """
    assert N % p == 0 and k0 >= 2
    rng = random.Random(seed)
    fb = free_basis(N)
    vN = vp(N, p)
    tail = family_tail(p, r, d)
    out = k0 - 1 + extra
    width = out + tail
    nb = branch_count(p)
    M = p ** r
    checked_group = checked_translate = 0
    for trial in range(trials):
        coords = []
        for i in range(width):
            if i < k0 - 1:
                coords.append(WeightFn.zero(p, r, d))
            else:
                coords.append(WeightFn(p, r, d,
                                       [[rng.randrange(M) for _ in range(d)]
                                        for _ in range(nb)]))
        F = FamilyVec(p, r, d, out, coords)

        m = fb.gens[rng.randrange(fb.rank())]
        gam = m if rng.random() < 0.5 else m.inverse()
        for _ in range(word_len - 1):
            g2 = fb.gens[rng.randrange(fb.rank())]
            gam = gam * (g2 if rng.random() < 0.5 else g2.inverse())
        assert gam.c % N == 0 and gam.a % N == 1
        out_g = act_family(PadicMat(p, r, *gam.entries()), F)
        for i in range(min(k0 - 1, len(out_g.coords))):
            fn = out_g.coords[i]
            for zeta in range(nb):
                if not _ideal_member(fn.comps[zeta], vN, zeta - k0, p, r, d):
                    raise ContractViolated(
                        "group action escapes the level ideal",
                        payload={"trial": trial, "coord": i, "branch": zeta,
                                 "matrix": gam.entries()})
            checked_group += 1

        theta = rng.randrange(p)
        out_t = act_family(PadicMat(p, r, p, -theta, 0, 1), F)
        for i, fn in enumerate(out_t.coords):
            for zeta in range(nb):
                if i < k0 - 1:
                    ok = _ideal_member(fn.comps[zeta], s, zeta - k0, p, r, d)
                else:
                    ok = all(x % p ** s == 0 for x in fn.comps[zeta])
                if not ok:
                    raise ContractViolated(
                        "translate action escapes the slope ideal",
                        payload={"trial": trial, "coord": i, "branch": zeta,
                                 "theta": theta})
            checked_translate += 1
    return {"trials": trials, "level": N, "cut": k0, "slope": s,
            "group_coords_checked": checked_group,
            "translate_coords_checked": checked_translate}
