"""Finite-precision p-adic integers and weight characters.

A PrecInt is a p-adic integer known modulo p^r: an odd prime p, a precision
r >= 1 and a canonical residue in [0, p^r).  Every operation records the
precision of its output; in particular division by m! consumes v_p(m!)
digits and raises PrecisionExhausted when none would remain.

A Weight is a character of the units, split as (tame, wild) with
tame in [0, p-2] and wild a PrecInt.  eval_char evaluates it on a unit via
the Teichmuller projection, pow_unit raises one-units to p-adic powers, and
reduce_weight computes the minimal non-negative integer congruent to the
weight modulo p^r (p - 1).
"""

import math

from .errors import (
    PrecisionExhausted,
    NotAUnit,
    NotOneUnit,
    PrecisionMismatch,
    BadWeight,
)

_PRIME_CACHE = {}


def _is_odd_prime(p):
    if p not in _PRIME_CACHE:
        ok = p >= 3 and p % 2 == 1
        if ok:
            f = 3
            while f * f <= p:
                if p % f == 0:
                    ok = False
                    break
                f += 2
        _PRIME_CACHE[p] = ok
    return _PRIME_CACHE[p]


def vp(n, p):
    """p-adic valuation of a nonzero integer."""
    assert n != 0
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_factorial(m, p):
    """v_p(m!) by the digit-sum formula."""
    assert m >= 0
    s, n = 0, m
    while n:
        s += n % p
        n //= p
    return (m - s) // (p - 1)


class PrecInt:
    """p-adic integer known mod p^r, canonical residue in [0, p^r)."""

    __slots__ = ("p", "r", "res")

    def __init__(self, p, r, value):
        assert _is_odd_prime(p), f"p must be an odd prime, got {p}"
        assert r >= 1, f"precision must be >= 1, got {r}"
        self.p = p
        self.r = r
        self.res = value % (p ** r)

    @property
    def modulus(self):
        return self.p ** self.r

    def _coerce(self, other):
        # returns (other residue, min precision); ints are exact
        if isinstance(other, PrecInt):
            if other.p != self.p:
                raise PrecisionMismatch(f"primes differ: {self.p} vs {other.p}")
            return other.res, min(self.r, other.r)
        if isinstance(other, int):
            return other, self.r
        return None, None

    def __add__(self, other):
        o, r = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrecInt(self.p, r, self.res + o)

    __radd__ = __add__

    def __sub__(self, other):
        o, r = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrecInt(self.p, r, self.res - o)

    def __rsub__(self, other):
        o, r = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrecInt(self.p, r, o - self.res)

    def __mul__(self, other):
        o, r = self._coerce(other)
        if o is None:
            return NotImplemented
        return PrecInt(self.p, r, self.res * o)

    __rmul__ = __mul__

    def __neg__(self):
        return PrecInt(self.p, self.r, -self.res)

    def __pow__(self, e):
        assert isinstance(e, int) and e >= 0
        return PrecInt(self.p, self.r, pow(self.res, e, self.modulus))

    def is_unit(self):
        return self.res % self.p != 0

    def is_one_unit(self):
        return self.res % self.p == 1

    def inverse(self):
        if not self.is_unit():
            raise NotAUnit(f"{self.res} is divisible by {self.p}")
        return PrecInt(self.p, self.r, pow(self.res, -1, self.modulus))

    def divexact(self, k):
        """Divide by a nonzero integer k, consuming v_p(k) digits."""
        assert isinstance(k, int) and k != 0
        sign = 1
        if k < 0:
            k, sign = -k, -1
        v = vp(k, self.p) if k % self.p == 0 else 0
        if self.r <= v:
            raise PrecisionExhausted(
                f"division by p^{v} * unit at precision {self.r}")
        if self.res % self.p ** v != 0:
            raise PrecisionExhausted(
                f"residue {self.res} not divisible by p^{v}")
        r2 = self.r - v
        unit = k // self.p ** v
        res = (self.res // self.p ** v) * pow(unit, -1, self.p ** r2) * sign
        return PrecInt(self.p, r2, res)

    def reduce(self, r2):
        assert 1 <= r2 <= self.r
        return PrecInt(self.p, r2, self.res)

    def valuation(self):
        """v_p of the residue; None when the residue is 0 (only >= r known)."""
        if self.res == 0:
            return None
        return vp(self.res, self.p)

    def __eq__(self, other):
        # equality mod the smaller of the two precisions
        o, r = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.res - o) % self.p ** r == 0

    def __hash__(self):
        raise TypeError("PrecInt compares mod min precision; not hashable")

    def __repr__(self):
        return f"PrecInt({self.res} mod {self.p}^{self.r})"


def binom_int(n, m):
    """Exact integer binomial for any integer n and natural m."""
    assert m >= 0
    num = 1
    for h in range(m):
        num *= n - h
    q, rem = divmod(num, math.factorial(m))
    assert rem == 0
    return q


def binom(n, m):
    """Extended binomial coefficient (1/m!) * prod_{h<m} (n - h).

    Integer n gives the exact integer value; a PrecInt n gives a PrecInt of
    precision r - v_p(m!), raising PrecisionExhausted when r <= v_p(m!).
    """
    assert m >= 0
    if isinstance(n, int):
        return binom_int(n, m)
    p = n.p
    v = vp_factorial(m, p)
    if n.r <= v:
        raise PrecisionExhausted(
            f"binom(-, {m}) needs more than v_p({m}!) = {v} digits, have {n.r}")
    M = n.modulus
    prod = 1
    for h in range(m):
        prod = prod * ((n.res - h) % M) % M
    return PrecInt(p, n.r, prod).divexact(math.factorial(m))


def teichmuller(d):
    """The unique (p-1)-st root of unity congruent to d mod p."""
    if not d.is_unit():
        raise NotAUnit(f"{d.res} is divisible by {d.p}")
    M = d.modulus
    x = d.res
    for _ in range(d.r):
        x = pow(x, d.p, M)
    assert pow(x, d.p, M) == x  # exact fixed point mod p^r
    return PrecInt(d.p, d.r, x)


def unit_project(d):
    """Projection of a unit onto the one-units: d divided by its Teichmuller lift."""
    u = d * teichmuller(d).inverse()
    assert u.is_one_unit()
    return u


def _series_cutoff(p, r):
    # first H with H*(p-2)/(p-1) >= r
    return -((-r * (p - 1)) // (p - 2))


def pow_unit(d, n):
    """d^n for a one-unit d and integer or PrecInt exponent n.

    Binomial series sum_h binom(n, h) (d-1)^h on the canonical lift of n,
    truncated at the first h with h(p-2)/(p-1) >= r.  Output precision is
    r for integer n and min(r, precision(n) + 1) otherwise.
    """
    if not d.is_one_unit():
        raise NotOneUnit(f"{d.res} is not congruent to 1 mod {d.p}")
    p = d.p
    if isinstance(n, PrecInt):
        if n.p != p:
            raise PrecisionMismatch(f"primes differ: {p} vs {n.p}")
        r = min(d.r, n.r + 1)
        n_int = n.res
    else:
        r = d.r
        n_int = n % p ** r
    M = p ** r
    H = _series_cutoff(p, r)
    x = (d.res - 1) % M
    acc, xpow = 0, 1
    for h in range(H):
        acc = (acc + math.comb(n_int, h) * xpow) % M
        xpow = xpow * x % M
    return PrecInt(p, r, acc)


class Weight:
    """Weight character split into tame (mod p-1) and wild (PrecInt) parts."""

    __slots__ = ("tame", "wild")

    def __init__(self, tame, wild):
        assert isinstance(wild, PrecInt)
        if not 0 <= tame <= wild.p - 2:
            raise BadWeight(f"tame part {tame} outside [0, {wild.p - 2}]")
        self.tame = tame
        self.wild = wild

    @property
    def p(self):
        return self.wild.p

    @property
    def r(self):
        return self.wild.r

    @classmethod
    def of_int(cls, n, p, r):
        """The character x -> x^n: tame n mod (p-1), wild n."""
        return cls(n % (p - 1), PrecInt(p, r, n))

    @classmethod
    def wild_only(cls, n, p, r):
        """The character trivial on roots of unity with wild part n."""
        return cls(0, PrecInt(p, r, n))

    def shift(self, m):
        """The weight lowered by the integer character x -> x^m."""
        return Weight((self.tame - m) % (self.p - 1), self.wild - m)

    def __add__(self, other):
        assert isinstance(other, Weight)
        return Weight((self.tame + other.tame) % (self.p - 1),
                      self.wild + other.wild)

    def __sub__(self, other):
        assert isinstance(other, Weight)
        return Weight((self.tame - other.tame) % (self.p - 1),
                      self.wild - other.wild)

    def __eq__(self, other):
        if not isinstance(other, Weight):
            return NotImplemented
        return self.tame == other.tame and self.wild == other.wild

    def __repr__(self):
        return f"Weight(tame={self.tame}, wild={self.wild!r})"


def eval_char(chi, d):
    """Value of the weight character chi on a unit d."""
    if not d.is_unit():
        raise NotAUnit(f"{d.res} is divisible by {d.p}")
    t = chi.tame
    tame_part = PrecInt(d.p, d.r, pow(d.res, t, d.modulus))
    return tame_part * pow_unit(unit_project(d), chi.wild - t)


def reduce_weight(chi, s):
    """Minimal m in [0, p^s (p-1)) with m = tame mod (p-1), m = wild mod p^s."""
    p = chi.p
    if chi.r < s:
        raise PrecisionExhausted(
            f"reduce_weight needs wild precision >= {s}, have {chi.r}")
    m1, m2 = p - 1, p ** s
    w = chi.wild.res % m2
    t = ((chi.tame - w) * pow(m2 % m1, -1, m1)) % m1
    m = w + m2 * t
    assert 0 <= m < m1 * m2 and m % m1 == chi.tame % m1 and m % m2 == w
    return m
