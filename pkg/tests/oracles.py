"""Independent brute-force oracles used by the test suite.

The integer-matrix oracles never call the Smith normal form code they
check.  The twisted-cohomology oracle does reuse it, but builds its
cochain complex from a different basis than the library does.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

import sympy

from realcstar.intlinalg import IntMatrix, kernel_basis, subquotient


def det(rows):
    """Exact determinant by Fraction Gaussian elimination."""
    A = [[Fraction(x) for x in r] for r in rows]
    n = len(A)
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        out *= A[c][c]
        for i in range(c + 1, n):
            f = A[i][c] / A[c][c]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[c])]
    return int(sign * out)


def determinantal_divisors(M):
    """Invariant factors from gcds of k x k minors: d_k = D_k / D_{k-1}."""
    r = len(M)
    c = len(M[0]) if r else 0
    factors = []
    prev = 1
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, det([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors


def coset_count(M, bound):
    """|ℤ^r / image(M)| by enumerating the image inside (ℤ/bound)^r.

    ``bound`` must be a multiple of the exponent of the quotient (the
    product of invariant factors works).  Returns bound^r / |image mod bound|.
    """
    r = len(M)
    c = len(M[0]) if r else 0
    gens = [tuple(M[i][j] % bound for i in range(r)) for j in range(c)]
    gens += [tuple(bound if i == j else 0 for i in range(r)) for j in range(r)]
    seen = {tuple([0] * r)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % bound for a, b in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return bound ** r // len(seen)


def twisted_oracle(X, n):
    """Cohomology of ker(1 + ι*) computed with exact rational solves.

    Independent of the orbit-representative basis: take a ℤ-basis K_k of
    the anti-invariant cochains, express δK_k in K_{k+1}, then take
    ker/im of the induced integer matrices.
    """
    def kernel(k):
        P = X.pullback(k)
        S = sympy.Matrix(P.tolist()) + sympy.eye(P.rows)
        return kernel_basis(IntMatrix.from_rows(S.tolist()) if P.rows else IntMatrix.zeros(0, 0))

    def induced(k):
        Ks, Kt = kernel(k), kernel(k + 1)
        if Ks.cols == 0 or Kt.cols == 0:
            return IntMatrix.zeros(Kt.cols, Ks.cols)
        D = sympy.Matrix(X.coboundary(k).tolist()) * sympy.Matrix(Ks.tolist())
        sol = sympy.Matrix(Kt.tolist()).solve_least_squares(D)
        assert all(x.is_integer for x in sol)
        return IntMatrix.from_rows([[int(x) for x in row] for row in sol.tolist()])

    cur = induced(n)
    prev = induced(n - 1) if n > 0 else IntMatrix.zeros(cur.cols, 0)
    return subquotient(cur, prev)
