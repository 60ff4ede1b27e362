#!/usr/bin/env python3
"""Independent reference values for the finite-field layer.

Brute-force search for the canonical modulus of F_{p^k}: monic irreducible
polynomials are scanned in ascending integer encoding sum(c_i * p^i) of the
non-leading coefficients, and the first hit is canonical. Irreducibility is
checked by trial division against every lower-degree monic polynomial, which
is slow but has no shared code with the engine.

Run:  python3 scripts/oracles/fields_oracle.py
"""

from itertools import product


def poly_trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mod(f, g, p):
    # remainder of f by monic g
    f = f[:]
    while len(f) >= len(g):
        c = f[-1]
        if c:
            s = len(f) - len(g)
            for i, gi in enumerate(g):
                f[s + i] = (f[s + i] - c * gi) % p
        poly_trim(f)
        if not f:
            break
    return f


def irreducible(f, p):
    k = len(f) - 1
    if k <= 0:
        return False
    for d in range(1, k // 2 + 1):
        for tail in product(range(p), repeat=d):
            g = list(tail) + [1]
            if not poly_mod(f, g, p):
                return False
    return True


def canonical_modulus(p, k):
    for v in range(p**k):
        tail = [(v // p**i) % p for i in range(k)]
        f = tail + [1]
        if irreducible(f, p):
            return f
    raise AssertionError


def main():
    cases = [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6),
             (3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)]
    for p, k in cases:
        f = canonical_modulus(p, k)
        print(f"modulus p={p} k={k}: coeffs(asc)={f}")


if __name__ == "__main__":
    main()
