"""Coset tables and free generating sets for level subgroups of SL_2(Z).

Right cosets of the level-N subgroup (lower-left entry divisible by N,
diagonal 1 mod N) inside SL_2(Z) correspond to unimodular bottom rows
(c, d) mod N.  For N >= 4 the subgroup is torsion-free and injects into
PSL_2(Z), which is freely generated modulo s^2 = u^3 = 1 by the rotation
s = (0 -1; 1 0) and u = s * t with t the unit translation.  A breadth
first Schreier transversal over the projective cosets (rows up to global
sign) therefore yields a free generating set of rank 1 + mu/6, where mu
is the projective index, plus a rewriting table expressing every directed
coset edge as a word in the kept generators.  express() decomposes an
arbitrary group element into that basis and replays the product as an
exact check.

free_basis caches its output as JSON keyed by a content hash (directory
taken from the cache_dir argument or the PWL_CACHE_DIR environment
variable); missing, stale or tampered files are silently rebuilt.
"""

import hashlib
import json
import math
import os

from .errors import BadLevel, InternalInconsistency, NotInGroup
from .matrices import IntMat

ROT = IntMat(0, -1, 1, 0)
SIX = IntMat(0, -1, 1, 1)        # rot * translation, order 3 in PSL_2(Z)
SIX_INV = IntMat(1, 1, -1, 0)

_CACHE_VERSION = 1


def in_gamma1(mat, N):
    """Membership test: determinant 1, c = 0 and a = d = 1 mod N."""
    return (mat.det() == 1 and mat.c % N == 0
            and mat.a % N == 1 and mat.d % N == 1)


class CosetTable:
    """Full coset list with the permutation action of s and t."""

    __slots__ = ("N", "rows", "index", "perm_s", "perm_t")

    def __init__(self, N, rows, index, perm_s, perm_t):
        self.N = N
        self.rows = rows
        self.index = index
        self.perm_s = perm_s
        self.perm_t = perm_t

    def coset_of(self, mat):
        return self.index[(mat.c % self.N, mat.d % self.N)]

    def size(self):
        return len(self.rows)


def coset_table(N):
    if N < 1:
        raise BadLevel(f"level must be positive, got {N}")
    rows = sorted((c, d) for c in range(N) for d in range(N)
                  if math.gcd(math.gcd(c, d), N) == 1)
    index = {row: i for i, row in enumerate(rows)}
    perm_s = [index[(d, (-c) % N)] for (c, d) in rows]
    perm_t = [index[(c, (c + d) % N)] for (c, d) in rows]
    return CosetTable(N, rows, index, perm_s, perm_t)


def _proj_canon(c, d, N):
    x = (c % N, d % N)
    y = ((-c) % N, (-d) % N)
    return min(x, y)


def _normalize_sign(m, N):
    # exactly one of +-m has diagonal 1 mod N once N >= 3
    if m.c % N == 0 and m.a % N == 1 and m.d % N == 1:
        return m
    w = IntMat(-m.a, -m.b, -m.c, -m.d)
    if w.c % N == 0 and w.a % N == 1 and w.d % N == 1:
        return w
    raise InternalInconsistency(f"{m} is not in the level-{N} subgroup up to sign")


class FreeBasisData:
    """Free generators of the level subgroup plus the rewriting table."""

    __slots__ = ("N", "mu", "rows", "perm_s", "perm_u", "perm_u_inv", "root",
                 "order", "pos", "lifts", "lift_words", "gens", "expr")

    def __init__(self, N, mu, rows, perm_s, perm_u, root, order, lifts,
                 lift_words, gens, expr):
        self.N = N
        self.mu = mu
        self.rows = rows
        self.perm_s = perm_s
        self.perm_u = perm_u
        self.perm_u_inv = [0] * len(perm_u)
        for i, j in enumerate(perm_u):
            self.perm_u_inv[j] = i
        self.root = root
        self.order = order
        self.pos = {t: i for i, t in enumerate(order)}
        self.lifts = lifts
        self.lift_words = lift_words
        self.gens = gens
        self.expr = expr

    def rank(self):
        return len(self.gens)

    def coset_of(self, mat):
        return self.rows.index(_proj_canon(mat.c, mat.d, self.N))

    def express(self, mat):
        """Word in the free generators equal to mat, as signed 1-based indices."""
        if not in_gamma1(mat, self.N):
            raise NotInGroup(f"{mat} is not in the level-{self.N} subgroup")
        out = []
        cur = self.root
        for g, e in _su_word(mat):
            if g == "s":
                out.extend(self.expr[(cur, "s")])
                cur = self.perm_s[cur]
            elif e == 1:
                out.extend(self.expr[(cur, "u")])
                cur = self.perm_u[cur]
            else:
                cur = self.perm_u_inv[cur]
                out.extend(-x for x in reversed(self.expr[(cur, "u")]))
        if cur != self.root:
            raise InternalInconsistency("rewriting walk did not close up")
        red = _free_reduce(out)
        prod = IntMat.identity()
        for k in red:
            g = self.gens[abs(k) - 1]
            prod = prod * (g if k > 0 else g.inverse())
        if prod != mat:
            raise InternalInconsistency("replayed word disagrees with input")
        return tuple(red)

    def to_payload(self):
        return {
            "version": _CACHE_VERSION,
            "level": self.N,
            "mu": self.mu,
            "rows": [list(r) for r in self.rows],
            "perm_s": list(self.perm_s),
            "perm_u": list(self.perm_u),
            "root": self.root,
            "order": list(self.order),
            "lifts": [list(m.entries()) for m in self.lifts],
            "lift_words": [[[g, e] for g, e in w] for w in self.lift_words],
            "gens": [list(m.entries()) for m in self.gens],
            "expr": sorted([t, g, list(w)] for (t, g), w in self.expr.items()),
        }

    @classmethod
    def from_payload(cls, blob):
        rows = [tuple(r) for r in blob["rows"]]
        lifts = [IntMat(*e) for e in blob["lifts"]]
        words = [tuple((g, e) for g, e in w) for w in blob["lift_words"]]
        gens = [IntMat(*e) for e in blob["gens"]]
        expr = {(t, g): tuple(w) for t, g, w in blob["expr"]}
        return cls(blob["level"], blob["mu"], rows, blob["perm_s"],
                   blob["perm_u"], blob["root"], blob["order"], lifts,
                   words, gens, expr)


def _free_reduce(word):
    out = []
    for k in word:
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return out


def _st_decompose(mat):
    """mat as a left-to-right word of ('s',) and ('t', e) tokens, up to sign."""
    a, b, c, d = mat.entries()
    ops = []
    while c != 0:
        k = -(a // c)
        a, b = a + k * c, b + k * d
        ops.append(k)
        a, b, c, d = -c, -d, a, b
    # now +-(1, b'; 0, 1) with the sign in a; undo the ops left to right
    word = []
    for k in ops:
        word.append(("t", -k))
        word.append(("s",))
    if a * b != 0:
        word.append(("t", a * b))
    return word


def _su_word(mat):
    """mat as a word in s and u (t = s u in the projective group)."""
    out = []
    for tok in _st_decompose(mat):
        if tok[0] == "s":
            out.append(("s", 1))
        else:
            e = tok[1]
            if e > 0:
                out.extend([("s", 1), ("u", 1)] * e)
            else:
                out.extend([("u", -1), ("s", 1)] * (-e))
    return out


def _build_basis(N):
    if N < 4:
        raise BadLevel(f"level {N} has torsion; need N >= 4")
    rows = sorted({_proj_canon(c, d, N) for c in range(N) for d in range(N)
                   if math.gcd(math.gcd(c, d), N) == 1})
    index = {row: i for i, row in enumerate(rows)}
    mu = len(rows)
    assert mu % 6 == 0

    def canon_i(c, d):
        return index[_proj_canon(c, d, N)]

    perm_s = [canon_i(d, -c) for (c, d) in rows]
    perm_u = [canon_i(d, d - c) for (c, d) in rows]
    perm_u_inv = [0] * mu
    for i, j in enumerate(perm_u):
        perm_u_inv[j] = i

    root = canon_i(0, 1)
    order = [root]
    pos = {root: 0}
    lifts = {root: IntMat.identity()}
    words = {root: ()}
    tree = set()
    qi = 0
    while qi < len(order):
        cur = order[qi]
        qi += 1
        for g, e in (("s", 1), ("u", 1), ("u", -1)):
            if g == "s":
                nxt = perm_s[cur]
            else:
                nxt = perm_u[cur] if e == 1 else perm_u_inv[cur]
            if nxt in pos:
                continue
            pos[nxt] = len(order)
            order.append(nxt)
            step = ROT if g == "s" else (SIX if e == 1 else SIX_INV)
            lifts[nxt] = lifts[cur] * step
            words[nxt] = words[cur] + ((g, e),)
            if g == "s":
                tree.add((cur, "s"))
                tree.add((nxt, "s"))
            elif e == 1:
                tree.add((cur, "u"))
            else:
                tree.add((nxt, "u"))
    assert len(order) == mu
    for t in order:
        assert canon_i(lifts[t].c, lifts[t].d) == t

    def edge_matrix(t, g):
        tgt = perm_s[t] if g == "s" else perm_u[t]
        m = lifts[t] * (ROT if g == "s" else SIX) * lifts[tgt].inverse()
        return _normalize_sign(m, N)

    gens = []
    expr = {}
    for t in order:
        t2 = perm_s[t]
        assert t2 != t
        if pos[t2] < pos[t]:
            continue
        if (t, "s") in tree:
            expr[(t, "s")] = ()
            expr[(t2, "s")] = ()
        else:
            m = edge_matrix(t, "s")
            if m == IntMat.identity():
                raise InternalInconsistency("trivial letter on a non-tree edge")
            gens.append(m)
            k = len(gens)
            expr[(t, "s")] = (k,)
            expr[(t2, "s")] = (-k,)
    seen = set()
    for t in order:
        if t in seen:
            continue
        cyc = [t, perm_u[t], perm_u[perm_u[t]]]
        assert len(set(cyc)) == 3
        seen.update(cyc)
        stat = [(c, "u") in tree for c in cyc]
        nontree = [i for i in range(3) if not stat[i]]
        assert nontree
        for i in range(3):
            if stat[i]:
                expr[(cyc[i], "u")] = ()
        if len(nontree) == 1:
            # both neighbors are tree edges, so the triangle relation makes
            # the remaining letter trivial
            if edge_matrix(cyc[nontree[0]], "u") != IntMat.identity():
                raise InternalInconsistency("triangle relation violated")
            expr[(cyc[nontree[0]], "u")] = ()
        elif len(nontree) == 2:
            j = stat.index(True)
            i1, i2 = (j + 1) % 3, (j + 2) % 3
            gens.append(edge_matrix(cyc[i1], "u"))
            k = len(gens)
            expr[(cyc[i1], "u")] = (k,)
            expr[(cyc[i2], "u")] = (-k,)
        else:
            gens.append(edge_matrix(cyc[0], "u"))
            k1 = len(gens)
            gens.append(edge_matrix(cyc[1], "u"))
            k2 = len(gens)
            expr[(cyc[0], "u")] = (k1,)
            expr[(cyc[1], "u")] = (k2,)
            expr[(cyc[2], "u")] = (-k2, -k1)
    if len(gens) != 1 + mu // 6:
        raise InternalInconsistency(
            f"basis has {len(gens)} letters, expected {1 + mu // 6}")

    data = FreeBasisData(N, mu, rows, perm_s, perm_u, root, order,
                         [lifts[t] for t in range(mu)],
                         [words[t] for t in range(mu)], gens, expr)
    _verify_edges(data, edge_matrix)
    return data


def _verify_edges(data, edge_matrix):
    # every rewriting entry must replay to the matrix of its directed edge
    for (t, g), word in data.expr.items():
        prod = IntMat.identity()
        for k in word:
            gen = data.gens[abs(k) - 1]
            prod = prod * (gen if k > 0 else gen.inverse())
        if prod != edge_matrix(t, g):
            raise InternalInconsistency(f"edge ({t}, {g}) fails to replay")


def _payload_hash(blob):
    canon = json.dumps(blob, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def free_basis(N, cache_dir=None):
    """Free generators and rewriting data for level N, cached when possible."""
    cdir = cache_dir or os.environ.get("PWL_CACHE_DIR")
    path = os.path.join(cdir, f"gamma1_{N}.json") if cdir else None
    if path and os.path.exists(path):
        try:
            with open(path) as fh:
                blob = json.load(fh)
            sha = blob.pop("sha", None)
            if (blob.get("version") == _CACHE_VERSION
                    and blob.get("level") == N and sha == _payload_hash(blob)):
                return FreeBasisData.from_payload(blob)
        except (ValueError, KeyError, TypeError, OSError):
            pass
    data = _build_basis(N)
    if path:
        try:
            os.makedirs(cdir, exist_ok=True)
            blob = data.to_payload()
            blob["sha"] = _payload_hash(data.to_payload())
            with open(path, "w") as fh:
                json.dump(blob, fh, sort_keys=True)
        except OSError:
            pass
    return data
