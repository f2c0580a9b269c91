"""First cohomology of the level subgroups and its double-coset operators.

The level subgroup is free (rank 1 + mu/6), so a 1-cocycle is determined
by arbitrary values on the free generators and H^1 is the quotient of the
value space by coboundaries.  Coefficient systems share a small duck
interface (zero/add/neg/act/dim/to_coords/from_coords/act_matrix):

  TrivialCoeffs  ints mod p^r with the trivial action;
  SymCoeffs      symmetric-power vectors acted on through the weight-n
                 matrix action;
  FamilyCoeffs   coordinate windows of weight-space functions acted on
                 through the interpolated family action (each action
                 consumes one width tail).

Cocycle.eval folds the defining identity c(gh) = c(g) + g.c(h) along the
rewriting of a group element, applying exactly one coefficient action per
letter so the family width cost of an evaluation is a single tail.

Double-coset operators: reps are found by a closure walk from the seed,
deduplicating by exact left-coset comparison over Z; the operator value
(A c)(g) = sum_theta act(adj(A_theta), c(gamma_theta)) uses the main
involution (adjugate) on the left.  hecke_matrix assembles the same
operator as a matrix on stacked generator values in one pass over the
rewritten words.  h1 presents the quotient by coboundaries via the
diagonalization of the coboundary matrix, giving class coordinates,
orders, and induced operator matrices (with charpoly available on free
presentations).
"""

import math

from .errors import (InternalInconsistency, NoLift, NotCoprime, NotFreeModule,
                     WidthInsufficient)
from .gamma1 import in_gamma1
from .iwasawa import (FamilyVec, WeightFn, act_family, branch_count,
                      family_tail, sp_vector)
from .linalg import charpoly_mod, invert_mod, mat_mul, mat_vec, smith_mod
from .matrices import IntMat, PadicMat
from .sympow import SymVec, act_sym, sym_matrix


class TrivialCoeffs:
    """Z/p^r with every group element acting as the identity."""

    def __init__(self, p, r):
        self.p, self.r = p, r

    def dim(self):
        return 1

    def zero(self):
        return 0

    def add(self, x, y):
        return (x + y) % self.p ** self.r

    def neg(self, x):
        return -x % self.p ** self.r

    def act(self, mat, x):
        return x % self.p ** self.r

    def act_matrix(self, mat):
        return [[1]]

    def to_coords(self, x):
        return [x % self.p ** self.r]

    def from_coords(self, coords):
        return coords[0] % self.p ** self.r

    def eq(self, x, y):
        return (x - y) % self.p ** self.r == 0

    def rand(self, rng):
        return rng.randrange(self.p ** self.r)


class SymCoeffs:
    """Degree-n symmetric-power vectors mod p^r."""

    def __init__(self, p, r, n):
        self.p, self.r, self.n = p, r, n

    def dim(self):
        return self.n + 1

    def zero(self):
        return SymVec(self.p, self.r, self.n, [0] * (self.n + 1))

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def act(self, mat, x):
        return act_sym(mat, x)

    def act_matrix(self, mat):
        return sym_matrix(self.n, mat, self.p, self.r)

    def to_coords(self, x):
        return list(x.coords)

    def from_coords(self, coords):
        return SymVec(self.p, self.r, self.n, list(coords))

    def eq(self, x, y):
        return x == y

    def rand(self, rng):
        M = self.p ** self.r
        return SymVec(self.p, self.r, self.n,
                      [rng.randrange(M) for _ in range(self.n + 1)])


class FamilyCoeffs:
    """Windows of weight-space functions with the family action.

    stored_width must budget one tail per action applied to a value: an
    evaluation costs one, a double-coset operator costs two.
    """

    def __init__(self, p, r, d, out_width, stored_width):
        assert stored_width >= out_width
        self.p, self.r, self.d = p, r, d
        self.out_width = out_width
        self.stored_width = stored_width

    def tail(self):
        return family_tail(self.p, self.r, self.d)

    def zero(self):
        return FamilyVec.zero(self.p, self.r, self.d, self.out_width,
                              self.stored_width)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def act(self, mat, x):
        if isinstance(mat, IntMat):
            mat = PadicMat(self.p, self.r, *mat.entries())
        return act_family(mat, x)

    def eq(self, x, y, width=None):
        if width is None:
            width = min(self.out_width, x.width(), y.width())
        return x.agrees(y, width)

    def rand(self, rng):
        M = self.p ** self.r
        nb = branch_count(self.p)
        coords = [WeightFn(self.p, self.r, self.d,
                           [[rng.randrange(M) for _ in range(self.d)]
                            for _ in range(nb)])
                  for _ in range(self.stored_width)]
        return FamilyVec(self.p, self.r, self.d, self.out_width, coords)


class Cocycle:
    """1-cocycle on the free generators of the level subgroup."""

    __slots__ = ("coeffs", "basis", "values")

    def __init__(self, coeffs, basis, values):
        assert len(values) == basis.rank()
        self.coeffs = coeffs
        self.basis = basis
        self.values = list(values)

    @classmethod
    def zero(cls, coeffs, basis):
        return cls(coeffs, basis, [coeffs.zero() for _ in range(basis.rank())])

    @classmethod
    def random(cls, coeffs, basis, rng):
        return cls(coeffs, basis, [coeffs.rand(rng) for _ in range(basis.rank())])

    def __add__(self, other):
        return Cocycle(self.coeffs, self.basis,
                       [self.coeffs.add(x, y)
                        for x, y in zip(self.values, other.values)])

    def __sub__(self, other):
        return Cocycle(self.coeffs, self.basis,
                       [self.coeffs.add(x, self.coeffs.neg(y))
                        for x, y in zip(self.values, other.values)])

    def eval(self, target):
        """Value on a group element (IntMat) or a pre-rewritten word."""
        word = self.basis.express(target) if isinstance(target, IntMat) else target
        val = self.coeffs.zero()
        cur = IntMat.identity()
        for k in word:
            if k > 0:
                g = self.basis.gens[k - 1]
                term = self.coeffs.act(cur, self.values[k - 1])
                val = self.coeffs.add(val, term)
                cur = cur * g
            else:
                g = self.basis.gens[-k - 1]
                cur = cur * g.inverse()
                term = self.coeffs.act(cur, self.values[-k - 1])
                val = self.coeffs.add(val, self.coeffs.neg(term))
        return val

    def stacked_coords(self):
        out = []
        for v in self.values:
            out.extend(self.coeffs.to_coords(v))
        return out


def coboundary(coeffs, basis, b):
    """The cocycle g -> g.b - b."""
    values = [coeffs.add(coeffs.act(g, b), coeffs.neg(b)) for g in basis.gens]
    return Cocycle(coeffs, basis, values)


def _same_left_coset(B1, B2, N):
    det = B1.det()
    if B2.det() != det:
        return False
    C = B1 * B2.cofactor()
    if any(e % det != 0 for e in C.entries()):
        return False
    return in_gamma1(IntMat(*(e // det for e in C.entries())), N)


def double_coset_reps(seed, basis, order=None, max_reps=2000):
    """Left-coset representatives of the double coset of the seed.

    order optionally overrides the closure walk's multiplier sequence
    (default: each free generator and its inverse, in basis order); the
    resulting representative set depends on it, the operator does not.
    """
    N = basis.N
    if order is None:
        order = [g for gg in basis.gens for g in (gg, gg.inverse())]
    reps = [seed]
    qi = 0
    while qi < len(reps):
        cur = reps[qi]
        qi += 1
        for g in order:
            cand = cur * g
            if not any(_same_left_coset(cand, old, N) for old in reps):
                reps.append(cand)
                if len(reps) > max_reps:
                    raise InternalInconsistency("double coset failed to close")
    return reps


def t_ell_reps(ell, basis, order=None):
    return double_coset_reps(IntMat(1, 0, 0, ell), basis, order=order)


def diamond_rep(n, N):
    """Determinant-1 matrix congruent to (n^-1, 0; 0, n) mod N."""
    if math.gcd(n, N) != 1:
        raise NotCoprime(f"{n} shares a factor with the level {N}")
    d = n % N
    a = pow(d, -1, N)
    b = (a * d - 1) // N
    return IntMat(a, b, N, d)


def _coset_partner(B, reps, N):
    for A2 in reps:
        det = A2.det()
        C = B * A2.cofactor()
        if all(e % det == 0 for e in C.entries()):
            G = IntMat(*(e // det for e in C.entries()))
            if in_gamma1(G, N):
                return G
    raise InternalInconsistency("no representative absorbs the translate")


def hecke_images(cocycle, reps):
    """Value-level double-coset operator: new cocycle on the generators."""
    coeffs, basis = cocycle.coeffs, cocycle.basis
    out = []
    for gam in basis.gens:
        val = coeffs.zero()
        for A in reps:
            G = _coset_partner(A * gam, reps, basis.N)
            v = cocycle.eval(G)
            val = coeffs.add(val, coeffs.act(A.cofactor(), v))
        out.append(val)
    return Cocycle(coeffs, basis, out)


def hecke_matrix(coeffs, basis, reps):
    """Matrix of the operator on stacked generator values, assembled in
    one pass over the rewritten words."""
    D = coeffs.dim()
    R = basis.rank()
    M = coeffs.p ** coeffs.r
    T = [[0] * (R * D) for _ in range(R * D)]

    def add_block(h, q, S, sign):
        for i in range(D):
            row = T[h * D + i]
            Si = S[i]
            for j in range(D):
                row[q * D + j] = (row[q * D + j] + sign * Si[j]) % M

    gen_mats = [coeffs.act_matrix(g) for g in basis.gens]
    inv_mats = [coeffs.act_matrix(g.inverse()) for g in basis.gens]
    for h, gam in enumerate(basis.gens):
        for A in reps:
            G = _coset_partner(A * gam, reps, basis.N)
            word = basis.express(G)
            S = coeffs.act_matrix(A.cofactor())
            for k in word:
                if k > 0:
                    add_block(h, k - 1, S, 1)
                    S = mat_mul(S, gen_mats[k - 1], M)
                else:
                    S = mat_mul(S, inv_mats[-k - 1], M)
                    add_block(h, -k - 1, S, -1)
    return T


class H1Presentation:
    """Quotient of stacked generator values by the coboundary image."""

    __slots__ = ("coeffs", "basis", "beta", "sf", "moduli")

    def __init__(self, coeffs, basis, beta, sf):
        self.coeffs = coeffs
        self.basis = basis
        self.beta = beta
        self.sf = sf
        total = basis.rank() * coeffs.dim()
        self.moduli = list(sf.exps) + [coeffs.r] * (total - len(sf.exps))

    def free_rank(self):
        return sum(1 for e in self.moduli if e == self.coeffs.r)

    def is_free(self):
        return all(e in (0, self.coeffs.r) for e in self.moduli)

    def order_exponent(self):
        return sum(self.moduli)

    def class_coords(self, cocycle_or_stack):
        stack = (cocycle_or_stack.stacked_coords()
                 if isinstance(cocycle_or_stack, Cocycle) else cocycle_or_stack)
        p = self.coeffs.p
        w = mat_vec(self.sf.U, stack, p ** self.coeffs.r)
        return tuple(x % p ** e for x, e in zip(w, self.moduli))

    def same_class(self, c1, c2):
        return self.class_coords(c1) == self.class_coords(c2)

    def induced_matrix(self, T):
        """Matrix of T on the free quotient coordinates; checks that T
        preserves coboundaries first."""
        p, r = self.coeffs.p, self.coeffs.r
        M = p ** r
        D = self.coeffs.dim()
        for t in range(D):
            col = [self.beta[i][t] for i in range(len(self.beta))]
            if self.sf.solve(mat_vec(T, col, M)) is None:
                raise InternalInconsistency(
                    "operator does not preserve coboundaries")
        if not self.is_free():
            raise NotFreeModule(f"mixed elementary divisors {self.moduli}")
        Uinv = invert_mod(self.sf.U, p, r)
        Ttil = mat_mul(mat_mul(self.sf.U, T, M), Uinv, M)
        F = [i for i, e in enumerate(self.moduli) if e == r]
        return [[Ttil[f1][f2] for f2 in F] for f1 in F]

    def charpoly(self, T):
        return charpoly_mod(self.induced_matrix(T), self.coeffs.p ** self.coeffs.r)


def h1(coeffs, basis):
    D = coeffs.dim()
    R = basis.rank()
    beta = [[0] * D for _ in range(R * D)]
    for t in range(D):
        b = coeffs.from_coords([1 if i == t else 0 for i in range(D)])
        cob = coboundary(coeffs, basis, b)
        stack = cob.stacked_coords()
        for i, x in enumerate(stack):
            beta[i][t] = x
    sf = smith_mod(beta, coeffs.p, coeffs.r)
    return H1Presentation(coeffs, basis, beta, sf)


def specialize_cocycle(k, cocycle):
    """Family-coefficient cocycle evaluated at integer weight k, as a
    symmetric-power cocycle of degree k - 2."""
    coeffs = cocycle.coeffs
    if coeffs.out_width < k - 1:
        raise WidthInsufficient(
            f"need {k - 1} certified coordinates, have {coeffs.out_width}")
    rr = min(coeffs.r, coeffs.d)
    out_coeffs = SymCoeffs(coeffs.p, rr, k - 2)
    values = []
    for F in cocycle.values:
        sv = sp_vector(k, F)
        values.append(SymVec(coeffs.p, rr, k - 2, sv.coords[:k - 1]))
    return Cocycle(out_coeffs, cocycle.basis, values)


def family_preimage(cocycle, d, stored_width=None):
    """Interpolate a symmetric-power cocycle into family coefficients.

    Solves, per generator and coordinate, for a branch series whose value
    at the attached integer weight matches the given coordinate; raises
    NoLift if some solve fails.
    """
    sym = cocycle.coeffs
    p, r = sym.p, sym.r
    k = sym.n + 2
    out_width = k - 1
    if stored_width is None:
        stored_width = out_width
    fam_coeffs = FamilyCoeffs(p, r, d, out_width, stored_width)
    zeta = k % branch_count(p)
    x0 = k - zeta
    M = p ** r
    row = [[pow(x0, j, M) for j in range(d)]]
    sf = smith_mod(row, p, r)
    values = []
    for v in cocycle.values:
        coords = []
        for i in range(out_width):
            sol = sf.solve([v.coords[i]])
            if sol is None:
                raise NoLift(f"no branch series hits {v.coords[i]} at weight {k}")
            comps = [[0] * d for _ in range(branch_count(p))]
            comps[zeta] = [x % M for x in sol]
            coords.append(WeightFn(p, r, d, comps))
        coords.extend(WeightFn.zero(p, r, d)
                      for _ in range(stored_width - out_width))
        F = FamilyVec(p, r, d, out_width, coords)
        rr = min(r, d)
        check = sp_vector(k, F)
        if any((a - b) % p ** rr != 0
               for a, b in zip(check.coords[:out_width], v.coords)):
            raise InternalInconsistency("family preimage fails to specialize")
        values.append(F)
    return Cocycle(fam_coeffs, cocycle.basis, values)
