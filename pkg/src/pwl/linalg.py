"""Linear algebra over Z/p^r: diagonalization, solving, charpoly.

smith_mod reduces a matrix to diag(p^e_1, ..., p^e_k) with e_1 <= e_2 <= ...
by invertible row and column transforms (minimal-valuation pivoting, unit
normalization); the transforms are returned, so solving, inverting, kernel
bases and cokernel presentations all come out of one reduction.  Matrices
are lists of rows of plain ints.

charpoly_mod is the division-free Berkowitz algorithm, valid over any
Z/M; coefficients are returned in ascending degree order with the leading
coefficient last (monic).
"""

from .errors import NotInvertible
from .padic import vp


def identity_mat(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B, M):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        row = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(m):
                    row[j] = (row[j] + a * Bt[j]) % M
    return out


def mat_vec(A, v, M):
    return [sum(a * x for a, x in zip(row, v)) % M for row in A]


def _val(x, p, r):
    return r if x % p ** r == 0 else min(vp(x, p), r)


class SmithForm:
    """U A V = diag(p^exps) mod p^r with U, V invertible."""

    __slots__ = ("p", "r", "m", "n", "exps", "U", "V")

    def __init__(self, p, r, m, n, exps, U, V):
        self.p, self.r = p, r
        self.m, self.n = m, n
        self.exps = exps
        self.U = U
        self.V = V

    def solve(self, b):
        """Particular solution of A x = b, or None."""
        p, r = self.p, self.r
        M = p ** r
        y = mat_vec(self.U, b, M)
        z = [0] * self.n
        for i, e in enumerate(self.exps):
            if y[i] % p ** e != 0:
                return None
            z[i] = y[i] // p ** e
        for i in range(len(self.exps), self.m):
            if y[i] % M != 0:
                return None
        return mat_vec(self.V, z, M)

    def kernel_exponent(self):
        """|kernel| = p ** this."""
        free_cols = self.n - len(self.exps)
        return sum(self.exps) + self.r * free_cols

    def image_exponent(self):
        """|image| = p ** this."""
        return sum(self.r - e for e in self.exps)

    def kernel_basis(self):
        """Column vectors spanning the kernel."""
        p, r = self.p, self.r
        M = p ** r
        out = []
        for i, e in enumerate(self.exps):
            if e == 0:
                continue
            scale = p ** (r - e)
            out.append([self.V[t][i] * scale % M for t in range(self.n)])
        for i in range(len(self.exps), self.n):
            out.append([self.V[t][i] % M for t in range(self.n)])
        return out


def smith_mod(A, p, r):
    m = len(A)
    n = len(A[0]) if m else 0
    M = p ** r
    B = [[x % M for x in row] for row in A]
    U = identity_mat(m)
    V = identity_mat(n)
    exps = []
    for k in range(min(m, n)):
        piv_i = piv_j = -1
        piv_v = r
        for i in range(k, m):
            for j in range(k, n):
                v = _val(B[i][j], p, r)
                if v < piv_v:
                    piv_i, piv_j, piv_v = i, j, v
        if piv_i < 0:
            exps.extend([r] * (min(m, n) - k))
            break
        if piv_i != k:
            B[k], B[piv_i] = B[piv_i], B[k]
            U[k], U[piv_i] = U[piv_i], U[k]
        if piv_j != k:
            for row in B:
                row[k], row[piv_j] = row[piv_j], row[k]
            for row in V:
                row[k], row[piv_j] = row[piv_j], row[k]
        e = piv_v
        unit = B[k][k] // p ** e
        uinv = pow(unit, -1, M)
        B[k] = [x * uinv % M for x in B[k]]
        U[k] = [x * uinv % M for x in U[k]]
        for i in range(m):
            if i == k:
                continue
            f = B[i][k] // p ** e
            if f % M == 0:
                continue
            B[i] = [(x - f * y) % M for x, y in zip(B[i], B[k])]
            U[i] = [(x - f * y) % M for x, y in zip(U[i], U[k])]
        for j in range(n):
            if j == k:
                continue
            f = B[k][j] // p ** e
            if f % M == 0:
                continue
            for row in B:
                row[j] = (row[j] - f * row[k]) % M
            for row in V:
                row[j] = (row[j] - f * row[k]) % M
        exps.append(e)
    return SmithForm(p, r, m, n, exps, U, V)


def solve_mod(A, b, p, r):
    """One solution of A x = b over Z/p^r, or None."""
    return smith_mod(A, p, r).solve(b)


def invert_mod(A, p, r):
    n = len(A)
    sf = smith_mod(A, p, r)
    if any(e != 0 for e in sf.exps) or len(sf.exps) < n:
        raise NotInvertible(f"matrix has elementary divisors p^{sf.exps}")
    return mat_mul(sf.V, sf.U, p ** r)


def charpoly_mod(A, M):
    """det(X I - A) by the Berkowitz method; ascending coefficients."""
    n = len(A)
    if n == 0:
        return [1 % M]
    poly = [1 % M, (-A[0][0]) % M]
    for k in range(1, n):
        a = A[k][k] % M
        R = [A[k][j] % M for j in range(k)]
        C = [A[i][k] % M for i in range(k)]
        B = [[A[i][j] % M for j in range(k)] for i in range(k)]
        t = [1 % M, (-a) % M]
        w = C
        for step in range(k):
            t.append((-sum(x * y for x, y in zip(R, w))) % M)
            if step < k - 1:
                w = mat_vec(B, w, M)
        new = [0] * (k + 2)
        for i, ti in enumerate(t):
            if ti:
                for j, pj in enumerate(poly):
                    if i + j < k + 2 and pj:
                        new[i + j] = (new[i + j] + ti * pj) % M
        poly = new
    return list(reversed(poly))
