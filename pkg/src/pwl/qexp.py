"""Truncated q-expansions and Hecke operators on their coefficients.

Coefficients live in whatever ring the caller supplies: Fractions for
Eisenstein constant terms, plain ints for cusp form fixtures, PrecInt
for p-adic data.  The operators only add and multiply coefficients, so
any of these work.

Two normalizations of the weight-k operator at ell are supported: the
'classical' one puts ell^(k-1) on the lower coefficient, while the
'cohomological' one puts ell^(k-2) there, matching the twist by which
the adjugate action on coefficient modules differs from the classical
double-coset action.  The diamond scalar is eps(n) n^(k-2)
cohomologically and just eps(n) classically.
"""

import math
from fractions import Fraction

from sympy import bernoulli, divisor_sigma

from .errors import (BadWeight, NotCoprime, PrecisionExhausted,
                     TruncationTooShort)
from .padic import PrecInt, vp


class DirichletChar:
    """Character mod N stored by unit values; missing units default to 1."""

    __slots__ = ("modulus", "values")

    def __init__(self, modulus, values=None):
        assert modulus >= 1
        self.modulus = modulus
        self.values = {}
        for u, x in (values or {}).items():
            assert math.gcd(u % modulus, modulus) == 1
            self.values[u % modulus] = x

    def __call__(self, n):
        n %= self.modulus
        if math.gcd(n, self.modulus) != 1:
            return 0
        return self.values.get(n, 1)


def trivial_char(N=1):
    return DirichletChar(N)


class QExp:
    """q-series a0 + a1 q + ... + aT q^T known through exponent T."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        assert len(coeffs) >= 1
        self.coeffs = list(coeffs)

    def truncation(self):
        return len(self.coeffs) - 1

    def a(self, h):
        if not 0 <= h <= self.truncation():
            raise TruncationTooShort(
                f"coefficient {h} beyond stored exponent {self.truncation()}")
        return self.coeffs[h]

    def __add__(self, other):
        n = min(len(self.coeffs), len(other.coeffs))
        return QExp([self.coeffs[i] + other.coeffs[i] for i in range(n)])

    def __sub__(self, other):
        n = min(len(self.coeffs), len(other.coeffs))
        return QExp([self.coeffs[i] - other.coeffs[i] for i in range(n)])

    def scale(self, c):
        return QExp([c * x for x in self.coeffs])

    def __eq__(self, other):
        return self.coeffs == other.coeffs

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        return f"QExp([{head}{', ...' if len(self.coeffs) > 6 else ''}])"


def eisenstein(k, T):
    """Level-one Eisenstein series: -B_k/2k + sum sigma_(k-1)(h) q^h."""
    if k < 4 or k % 2 != 0:
        raise BadWeight(
            f"weight {k} has no holomorphic level-one Eisenstein series here")
    b = bernoulli(k)
    a0 = Fraction(-int(b.p), int(2 * k * b.q))
    return QExp([a0] + [int(divisor_sigma(h, k - 1)) for h in range(1, T + 1)])


def _power_exponent(k, normalization):
    assert normalization in ("cohomological", "classical")
    return k - 2 if normalization == "cohomological" else k - 1


def hecke_t(ell, k, eps, f, normalization="cohomological"):
    """b_h = a(ell h) + eps(ell) ell^e a(h/ell), second term when ell | h.

    eps(ell) = 0 when ell divides the character modulus, which switches
    the second term off exactly when it should be.  The result is known
    through exponent T // ell.
    """
    e = _power_exponent(k, normalization)
    T = f.truncation()
    newT = T // ell
    if newT < 1:
        raise TruncationTooShort(
            f"need at least {ell} stored coefficients, have {T}")
    out = []
    for h in range(newT + 1):
        b = f.a(ell * h)
        if h % ell == 0:
            b = b + eps(ell) * ell ** e * f.a(h // ell)
        out.append(b)
    return QExp(out)


def hecke_s(n, k, eps, f, normalization="cohomological"):
    """Diamond operator: eps(n) classically, eps(n) n^(k-2) cohomologically."""
    assert normalization in ("cohomological", "classical")
    if eps(n) == 0:
        raise NotCoprime(f"{n} shares a factor with the modulus {eps.modulus}")
    scal = eps(n) if normalization == "classical" else eps(n) * n ** (k - 2)
    return QExp([scal * c for c in f.coeffs])


def pairing(f):
    """Evaluation against the canonical linear functional: the q^1 term."""
    return f.a(1)


def slope_check(f, p, s):
    """True when v_p(a_p) < s, decided rigorously or not at all.

    Exact coefficients (int, Fraction) always decide; a PrecInt decides
    only if its precision exceeds s, otherwise a residue of 0 cannot
    distinguish valuation s from larger and we refuse.
    """
    assert s >= 0
    ap = f.a(p)
    if isinstance(ap, PrecInt):
        if ap.res != 0:
            # a nonzero residue pins the valuation exactly
            return vp(ap.res, p) < s
        if ap.r > s:
            return False
        raise PrecisionExhausted(
            f"valuation cutoff {s} needs more than {ap.r} digits")
    x = Fraction(ap)
    if x == 0:
        return False
    return vp(x.numerator, p) - vp(x.denominator, p) < s
