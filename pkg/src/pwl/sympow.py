"""Symmetric-power actions and their interpolation in the weight.

SymVec holds the coordinates of a degree-n symmetric-power lattice element
in the binomial basis e_i = C(n, i) T1^i T2^(n-i); the matrix action is
induced by T1 -> a T1 + c T2, T2 -> b T1 + d T2.

SeqVec holds an infinite-coordinate analogue at a p-adic weight chi: a
finite window of coordinates over Z/p^r.  act_universal applies the
weight-chi action; its output coordinate i only depends on inputs j with
(j - i)(p - 2)/(p - 1) < r, so each application consumes tail_width(p, r)
stored coordinates.  At integer weight n, dropping coordinates beyond n
(specialize) intertwines act_universal with act_sym exactly; between two
integer weights congruent mod p^(r-1)(p-1), truncation to the smaller
degree (congr_project) is equivariant mod p^r.

binom_identity evaluates both sides of the alternating-sum identity
  sum_m (-1)^(m-h) binom(n-m, i-m) C(j, m) C(m, h) = binom(n-j, i-h) C(j, h)
used to verify the action's composition law coefficientwise.
"""

import math

from .errors import BadRange, BadWeight, CongruenceViolated, WidthInsufficient
from .padic import PrecInt, Weight, binom, binom_int, eval_char, vp, vp_factorial


def tail_width(p, r):
    """Smallest t with t(p-2)/(p-1) >= r: coordinates consumed per action."""
    return -((-r * (p - 1)) // (p - 2))


def _entries_mod(mat, p, r):
    # accepts PadicMat or IntMat; returns entries reduced mod p^r
    M = p ** r
    return (mat.a % M, mat.b % M, mat.c % M, mat.d % M)


class SymVec:
    """Element of the degree-n symmetric power in the binomial basis."""

    __slots__ = ("p", "r", "n", "coords")

    def __init__(self, p, r, n, coords):
        assert len(coords) == n + 1
        self.p, self.r, self.n = p, r, n
        M = p ** r
        self.coords = [c % M for c in coords]

    def __add__(self, other):
        assert self.n == other.n and self.p == other.p
        r = min(self.r, other.r)
        return SymVec(self.p, r, self.n,
                      [x + y for x, y in zip(self.coords, other.coords)])

    def __sub__(self, other):
        assert self.n == other.n and self.p == other.p
        r = min(self.r, other.r)
        return SymVec(self.p, r, self.n,
                      [x - y for x, y in zip(self.coords, other.coords)])

    def __neg__(self):
        return SymVec(self.p, self.r, self.n, [-x for x in self.coords])

    def reduce(self, r2):
        assert 1 <= r2 <= self.r
        return SymVec(self.p, r2, self.n, self.coords)

    def __eq__(self, other):
        if not isinstance(other, SymVec):
            return NotImplemented
        if self.p != other.p or self.n != other.n:
            return False
        m = self.p ** min(self.r, other.r)
        return all((x - y) % m == 0 for x, y in zip(self.coords, other.coords))

    def __repr__(self):
        return f"SymVec(n={self.n}, mod {self.p}^{self.r}: {self.coords})"


def sym_matrix(n, mat, p, r):
    """Matrix of the degree-n action in the binomial basis, mod p^r.

    Entry (i, j) is sum_h C(i,h) C(n-i, j-h) a^h b^(i-h) c^(j-h) d^(n-i-j+h).
    """
    a, b, c, d = _entries_mod(mat, p, r)
    M = p ** r
    rows = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            acc = 0
            for h in range(max(0, i + j - n), min(i, j) + 1):
                acc += (math.comb(i, h) * math.comb(n - i, j - h)
                        * pow(a, h, M) * pow(b, i - h, M)
                        * pow(c, j - h, M) * pow(d, n - i - j + h, M))
            row.append(acc % M)
        rows.append(row)
    return rows


def act_sym(mat, v):
    """Apply the degree-n symmetric-power action to a SymVec."""
    m = sym_matrix(v.n, mat, v.p, v.r)
    out = [sum(m[i][j] * v.coords[j] for j in range(v.n + 1))
           for i in range(v.n + 1)]
    return SymVec(v.p, v.r, v.n, out)


def to_monomial(v):
    """Debug change of basis: coordinates on T1^i T2^(n-i), as Fractions."""
    from fractions import Fraction
    return [Fraction(v.coords[i]) * math.comb(v.n, i) for i in range(v.n + 1)]


class SeqVec:
    """Window of coordinates at weight chi over Z/p^r.

    coords may exceed out_width; the surplus is working room consumed by
    each action (tail_width coordinates per application).
    """

    __slots__ = ("p", "r", "chi", "out_width", "coords")

    def __init__(self, chi, out_width, coords):
        assert isinstance(chi, Weight)
        if len(coords) < out_width:
            raise WidthInsufficient(
                f"{len(coords)} coordinates cannot certify width {out_width}")
        self.p, self.r = chi.p, chi.r
        self.chi = chi
        self.out_width = out_width
        M = self.p ** self.r
        self.coords = [c % M for c in coords]

    def width(self):
        return len(self.coords)

    def __add__(self, other):
        assert self.chi == other.chi
        n = min(len(self.coords), len(other.coords))
        return SeqVec(self.chi, min(self.out_width, other.out_width),
                      [x + y for x, y in zip(self.coords[:n], other.coords[:n])])

    def __sub__(self, other):
        assert self.chi == other.chi
        n = min(len(self.coords), len(other.coords))
        return SeqVec(self.chi, min(self.out_width, other.out_width),
                      [x - y for x, y in zip(self.coords[:n], other.coords[:n])])

    def agrees(self, other, width):
        """Equality of the first `width` coordinates mod p^min(r, r')."""
        m = self.p ** min(self.r, other.r)
        return all((x - y) % m == 0
                   for x, y in zip(self.coords[:width], other.coords[:width]))

    def __repr__(self):
        return (f"SeqVec(out={self.out_width}, stored={len(self.coords)}, "
                f"mod {self.p}^{self.r})")


def _c_factors(c, jmax, p, r):
    # cf[m] = c^m / m! mod p^r; c is divisible by p so the quotient is integral
    M = p ** r
    cf = [1]
    if jmax == 0:
        return cf
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


def act_universal(mat, seq):
    """Apply the weight-chi action; consumes tail_width stored coordinates.

    Output coordinate i is
      sum_j alpha_j sum_h C(i,h) prod_{m=i}^{i+j-h-1}(w - m)
                         a^h b^(i-h) (c^(j-h)/(j-h)!) d^(chi - i - j + h)
    with w the wild part of chi.  Raises WidthInsufficient when fewer than
    out_width coordinates would remain certified.
    """
    chi = seq.chi
    p, r = seq.p, seq.r
    t = tail_width(p, r)
    width = len(seq.coords)
    new_len = width - t
    if new_len < seq.out_width:
        raise WidthInsufficient(
            f"need {seq.out_width + t} stored coordinates, have {width}")
    a, b, c, d = _entries_mod(mat, p, r)
    M = p ** r
    d_pre = PrecInt(p, r, d)
    # d^(chi - t) for every exponent shift t that can occur
    dpow = [eval_char(chi.shift(s), d_pre).res for s in range(2 * width + 1)]
    cf = _c_factors(c, width, p, r)
    apow = [pow(a, h, M) for h in range(width + 1)]
    bpow = [pow(b, h, M) for h in range(width + 1)]
    w = chi.wild.res
    out = []
    for i in range(new_len):
        # falling products prod_{m=i}^{i+L-1} (w - m), built incrementally
        fall = [1]
        for L in range(1, width):
            fall.append(fall[-1] * ((w - (i + L - 1)) % M) % M)
        acc = 0
        for j in range(width):
            aj = seq.coords[j]
            if aj == 0:
                continue
            s = 0
            for h in range(min(i, j) + 1):
                L = j - h
                s += (math.comb(i, h) * fall[L] % M * apow[h] % M
                      * bpow[i - h] % M * cf[L] % M * dpow[i + j - h] % M)
            acc = (acc + aj * s) % M
        out.append(acc)
    return SeqVec(chi, seq.out_width, out)


def specialize(seq, n):
    """Truncate to coordinates 0..n, landing in the degree-n symmetric power.

    Requires chi to be the integer weight n at full precision; then the
    truncation intertwines act_universal with act_sym exactly.
    """
    p, r = seq.p, seq.r
    if seq.chi.tame != n % (p - 1) or seq.chi.wild != n:
        raise BadWeight(f"weight is not the integer weight {n}")
    if seq.out_width < n + 1 or len(seq.coords) < n + 1:
        raise WidthInsufficient(
            f"need {n + 1} certified coordinates, have out_width {seq.out_width}")
    return SymVec(p, r, n, seq.coords[:n + 1])


def congr_project(r, n1, n0, v):
    """Truncate degree n1 to degree n0 at precision r.

    Equivariant for the p-stabilized monoid when n1 - n0 is a multiple of
    p^(r-1)(p-1).
    """
    if n0 > n1:
        raise BadRange(f"target degree {n0} exceeds source degree {n1}")
    assert v.n == n1
    p = v.p
    if (n1 - n0) % (p ** (r - 1) * (p - 1)) != 0:
        raise CongruenceViolated(
            f"{n1} - {n0} is not a multiple of p^{r - 1}(p-1)")
    r2 = min(v.r, r)
    return SymVec(p, r2, n0, v.coords[:n0 + 1])


def binom_identity(n, i, j, h):
    """Both sides of the alternating-sum binomial identity, for comparison.

    Returns (lhs, rhs); exact integers for integer n, PrecInts otherwise.
    Raises BadRange when h > min(i, j).
    """
    if h > min(i, j):
        raise BadRange(f"h = {h} exceeds min(i, j) = {min(i, j)}")
    if isinstance(n, int):
        lhs = sum((-1) ** (m - h) * binom_int(n - m, i - m)
                  * math.comb(j, m) * math.comb(m, h)
                  for m in range(h, min(i, j) + 1))
        rhs = binom_int(n - j, i - h) * math.comb(j, h)
        return lhs, rhs
    lhs = None
    for m in range(h, min(i, j) + 1):
        term = binom(n - m, i - m) * ((-1) ** (m - h)
                                      * math.comb(j, m) * math.comb(m, h))
        lhs = term if lhs is None else lhs + term
    rhs = binom(n - j, i - h) * math.comb(j, h)
    return lhs, rhs
