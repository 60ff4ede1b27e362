#!/usr/bin/env python3
"""Independent reference values for matrix groups over small finite fields.

Everything here is computed by direct enumeration of matrices: group orders,
conjugacy data, distinguished subgroup orders, Borel orbit counts, double
cosets, orbit counts on pair spaces, and fixed-point sums for the incidence
identity. Field arithmetic is table-free polynomial arithmetic, independent
of the engine's encodings.

Run:  python3 scripts/oracles/groups_oracle.py
"""

from fractions import Fraction
from itertools import product


class F:
    """F_{p^k} with elements as tuples of length k (ascending coeffs)."""

    def __init__(self, p, k, modulus):
        self.p, self.k, self.mod = p, k, tuple(modulus)  # len k+1, monic
        self.zero = (0,) * k
        self.one = tuple([1] + [0] * (k - 1)) if k else ()
        self.elems = [tuple(reversed(t)) for t in product(range(p), repeat=k)]
        self.elems.sort(key=lambda e: sum(c * p**i for i, c in enumerate(e)))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        acc = [0] * (2 * k - 1) if k > 1 else [0]
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    acc[i + j] = (acc[i + j] + x * y) % p
        # reduce by modulus
        for d in range(len(acc) - 1, k - 1, -1):
            c = acc[d]
            if c:
                acc[d] = 0
                for i in range(k + 1):
                    acc[d - self.k + i] = (acc[d - self.k + i] - c * self.mod[i]) % p
        return tuple(acc[:k])

    def inv(self, a):
        for e in self.elems:
            if self.mul(a, e) == self.one:
                return e
        raise ZeroDivisionError


def f_prime(p):
    return F(p, 1, (0, 1))


def mat_mul(K, A, B):
    n = len(A)
    return tuple(tuple(
        _dot(K, [A[i][t] for t in range(n)], [B[t][j] for t in range(n)])
        for j in range(n)) for i in range(n))


def _dot(K, u, v):
    s = K.zero
    for x, y in zip(u, v):
        s = K.add(s, K.mul(x, y))
    return s


def mat_det(K, A):
    n = len(A)
    if n == 1:
        return A[0][0]
    if n == 2:
        return K.add(K.mul(A[0][0], A[1][1]), K.neg(K.mul(A[0][1], A[1][0])))
    s = K.zero
    for j in range(n):
        minor = tuple(tuple(A[i][t] for t in range(n) if t != j) for i in range(1, n))
        term = K.mul(A[0][j], mat_det(K, minor))
        s = K.add(s, term if j % 2 == 0 else K.neg(term))
    return s


def all_matrices(K, n):
    cells = list(product(K.elems, repeat=n * n))
    return [tuple(tuple(c[i * n + j] for j in range(n)) for i in range(n)) for c in cells]


def gl(K, n):
    return [A for A in all_matrices(K, n) if mat_det(K, A) != K.zero]


def sl(K, n):
    return [A for A in all_matrices(K, n) if mat_det(K, A) == K.one]


def mat_inv(K, A, group):
    Iq = ident(K, len(A))
    for B in group:
        if mat_mul(K, A, B) == Iq:
            return B
    raise AssertionError


def ident(K, n):
    return tuple(tuple(K.one if i == j else K.zero for j in range(n)) for i in range(n))


def conj_classes(K, G):
    Gset = set(G)
    inv = {}
    Iq = ident(K, len(G[0]))
    for A in G:
        for B in G:
            if mat_mul(K, A, B) == Iq:
                inv[A] = B
                break
    seen, classes = set(), []
    for A in G:
        if A in seen:
            continue
        cl = set()
        for g in G:
            cl.add(mat_mul(K, mat_mul(K, g, A), inv[g]))
        seen |= cl
        classes.append(cl)
    return classes


def element_order(K, A):
    Iq = ident(K, len(A))
    B, r = A, 1
    while B != Iq:
        B = mat_mul(K, B, A)
        r += 1
    return r


def lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


def proj_line(K):
    """P^1 as normalized column pairs (first nonzero coord = 1)."""
    pts = [(K.one, y) for y in K.elems] + [(K.zero, K.one)]
    return pts


def normalize_line(K, v):
    for c in v:
        if c != K.zero:
            ci = K.inv(c)
            return tuple(K.mul(ci, x) for x in v)
    raise AssertionError


def act_line(K, A, pt):
    v = tuple(_dot(K, row, list(pt)) for row in A)
    return normalize_line(K, v)


def borel(K, G):
    return [A for A in G
            if all(A[i][j] == K.zero for i in range(len(A)) for j in range(len(A)) if i > j)]


def orbit_count(pts, acts):
    """acts: list of callables pt -> pt."""
    idx = {p: i for i, p in enumerate(pts)}
    parent = list(range(len(pts)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in acts:
        for p in pts:
            i, j = find(idx[p]), find(idx[a(p)])
            if i != j:
                parent[i] = j
    return len({find(i) for i in range(len(pts))})


def main():
    F2 = f_prime(2)
    F3 = f_prime(3)
    F4 = F(2, 2, (1, 1, 1))
    F9 = F(3, 2, (1, 0, 1))

    G2 = gl(F2, 2)
    G3 = gl(F3, 2)
    S3g = sl(F3, 2)
    print("order GL2(F2) =", len(G2))
    print("order GL2(F3) =", len(G3))
    print("order SL2(F3) =", len(S3g))
    print("order GL2(F4) =", len(gl(F4, 2)))
    print("order GL2(F9) =", len(gl(F9, 2)))

    cl2 = conj_classes(F2, G2)
    print("classes GL2(F2):", sorted(len(c) for c in cl2))
    cl3 = conj_classes(F3, G3)
    print("classes GL2(F3):", sorted(len(c) for c in cl3))
    cls3 = conj_classes(F3, S3g)
    print("classes SL2(F3):", sorted(len(c) for c in cls3))

    exp3 = 1
    for c in cl3:
        exp3 = lcm(exp3, element_order(F3, next(iter(c))))
    print("exponent GL2(F3) =", exp3)
    exp2 = 1
    for c in cl2:
        exp2 = lcm(exp2, element_order(F2, next(iter(c))))
    print("exponent GL2(F2) =", exp2)

    Z3 = [A for A in G3 if all(mat_mul(F3, A, B) == mat_mul(F3, B, A) for B in G3)]
    print("center GL2(F3) =", len(Z3))
    B3 = borel(F3, G3)
    print("borel GL2(F3) =", len(B3))
    T3 = [A for A in B3 if A[0][1] == F3.zero]
    print("torus GL2(F3) =", len(T3))
    U3 = [A for A in B3 if A[0][0] == F3.one and A[1][1] == F3.one]
    print("unipotent GL2(F3) =", len(U3))

    # Borel orbits on P^1(F_3)
    P3 = proj_line(F3)
    print("P1(F3) size =", len(P3))
    print("B-orbits on P1(F3) =",
          orbit_count(P3, [lambda p, A=A: act_line(F3, A, p) for A in B3]))

    # Bruhat: B x B orbits on GL2(F2)
    B2 = borel(F2, G2)
    inv2 = {A: mat_inv(F2, A, G2) for A in B2}
    acts = [lambda x, A=A: mat_mul(F2, A, x) for A in B2] + \
           [lambda x, A=A: mat_mul(F2, x, inv2[A]) for A in B2]
    print("BxB-orbits on GL2(F2) =", orbit_count(G2, acts))

    # orbit counts of G on spaces (trivial-character multiplicities)
    print("GL2(F3)-orbits on P1xP1 =", orbit_count(
        list(product(P3, P3)),
        [lambda s, A=A: (act_line(F3, A, s[0]), act_line(F3, A, s[1])) for A in G3]))

    # pair-space orbit counts: <perm,perm> over the group
    print("GL2(F3)-orbits on (P1)^2 pairs == rank of P1 perm:",
          orbit_count(list(product(P3, P3)),
                      [lambda s, A=A: (act_line(F3, A, s[0]), act_line(F3, A, s[1])) for A in G3]))

    # torus coset space at q=3: pairs of distinct lines; B-orbit count
    X_T = [(u, v) for u in P3 for v in P3 if u != v]
    print("G/T(F3) size =", len(X_T))
    print("B-orbits on G/T(F3) =", orbit_count(
        X_T, [lambda s, A=A: (act_line(F3, A, s[0]), act_line(F3, A, s[1])) for A in B3]))
    print("G-orbits on G/T(F3) =", orbit_count(
        X_T, [lambda s, A=A: (act_line(F3, A, s[0]), act_line(F3, A, s[1])) for A in G3]))

    # G/T double-coset rank: orbits of G on (G/T)^2
    print("rank of C[G/T] at q=3 =", orbit_count(
        list(product(X_T, X_T)),
        [lambda s, A=A: ((act_line(F3, A, s[0][0]), act_line(F3, A, s[0][1])),
                         (act_line(F3, A, s[1][0]), act_line(F3, A, s[1][1]))) for A in G3]))

    # incidence sums for the complete-flag space of GL2 (= P^1)
    def fix_sum(Kf, Bg, pts):
        tot = 0
        for A in Bg:
            tot += sum(1 for p in pts if act_line(Kf, A, p) == p)
        return tot

    s1 = fix_sum(F3, B3, P3)
    print("sum_{b in B(F3)} Fix_{P1}(b) =", s1, " incidence k=1 =", 4 * s1)
    G9 = gl(F9, 2)
    B9 = borel(F9, G9)
    P9 = proj_line(F9)
    s2 = fix_sum(F9, B9, P9)
    print("sum_{b in B(F9)} Fix_{P1}(b) =", s2, " incidence k=2 =", 10 * s2)
    print("identity check k=2: |GL2(F9)| * orbits =", len(G9) * orbit_count(
        P9, [lambda p, A=A: act_line(F9, A, p) for A in B9]))

    # induced space size: P1(F3) x_{SL2} GL2
    pairs = [(pt, g) for pt in P3 for g in G9 if False]  # placeholder, see below
    invS = {}
    Iq = ident(F3, 2)
    for A in S3g:
        for Bm in S3g:
            if mat_mul(F3, A, Bm) == Iq:
                invS[A] = Bm
                break
    classes = set()
    for pt in P3:
        for g in G3:
            rep = min(((act_line(F3, h, pt), mat_mul(F3, h, g)) for h in S3g),
                      key=lambda t: str(t))
            classes.add(rep)
    print("induced space |P1(F3) x_{SL2} GL2(F3)| =", len(classes))

    # GL3(F2): order, flags, classes
    G32 = gl(F2, 3)
    print("order GL3(F2) =", len(G32))
    cl32 = conj_classes(F2, G32)
    print("classes GL3(F2):", sorted(len(c) for c in cl32))

    # classical degree patterns
    for q in (2, 3, 4, 5):
        degs = sorted([1] * (q - 1) + [q] * (q - 1)
                      + [q + 1] * ((q - 1) * (q - 2) // 2)
                      + [q - 1] * (q * (q - 1) // 2))
        assert sum(d * d for d in degs) == (q * q - 1) * (q * q - q)
        print(f"GL2(F{q}) degrees:", degs)
    print("GL3(F2) degrees: [1, 3, 3, 6, 7, 8]  (sum sq =", 1 + 9 + 9 + 36 + 49 + 64, ")")


if __name__ == "__main__":
    main()
