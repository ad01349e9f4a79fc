"""Real, complex and quaternionic type of irreducible representations, and
finite-dimensional real semisimple algebras as sums of matrix algebras
over ℝ, ℂ and ℍ.

Two independent routes produce a real Wedderburn decomposition:

* ``wedderburn_real`` reads it off a character table through the
  Frobenius-Schur indicators;
* ``decompose_by_structure_constants`` works from multiplication
  constants alone, in exact rational arithmetic: center, a generic
  central element's minimal polynomial, its factorization over ℚ, and the
  signature of the trace form on each block.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import isqrt, lcm

import numpy as np
import sympy

from realcstar.chartab import CharacterTable, conjugate_partner
from realcstar.errors import (
    DimensionMismatch,
    FormatError,
    InfiniteUnsupported,
    NonIntegralIndicator,
    NotAssociative,
    NotSemisimple,
    OddQuaternionicDim,
    PairingFailure,
)
from realcstar.multiplicity import (
    OMEGA,
    add_mult,
    check_mult,
    mul_mult,
    mult_from_json,
    mult_prefix,
    mult_to_json,
)

INDICATOR_TOL = 1e-6
RING_DIM = {"R": 1, "C": 2, "H": 4}
_RING_ORDER = {"R": 0, "C": 1, "H": 2}


class IrrepType(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"
    QUATERNIONIC = "quaternionic"

    @classmethod
    def from_indicator(cls, nu: int) -> IrrepType:
        return {1: cls.REAL, 0: cls.COMPLEX, -1: cls.QUATERNIONIC}[nu]


# ---------------------------------------------------------------------------
# real algebras as formal sums


@dataclass(frozen=True, order=True)
class Summand:
    ring: str
    size: int
    multiplicity: object = 1

    def __post_init__(self):
        if self.ring not in RING_DIM:
            raise ValueError(f"division ring must be R, C or H, not {self.ring!r}")
        if self.size < 1:
            raise ValueError("matrix size must be positive")
        check_mult(self.multiplicity)

    def real_dimension(self) -> int:
        if self.multiplicity is OMEGA:
            raise InfiniteUnsupported("real dimension of an ω-multiplicity summand")
        return self.multiplicity * self.size ** 2 * RING_DIM[self.ring]

    def __str__(self):
        return f"{mult_prefix(self.multiplicity)}M{self.size}({self.ring})"


@dataclass(frozen=True)
class RealAlgebra:
    summands: tuple[Summand, ...] = ()
    name: str = ""

    def __post_init__(self):
        merged: dict[tuple[str, int], object] = {}
        for s in self.summands:
            if s.multiplicity == 0:
                continue
            key = (s.ring, s.size)
            merged[key] = add_mult(merged.get(key, 0), s.multiplicity)
        keys = sorted(merged, key=lambda k: (_RING_ORDER[k[0]], k[1]))
        object.__setattr__(self, "summands", tuple(Summand(r, n, merged[(r, n)]) for r, n in keys))

    @classmethod
    def of(cls, *items, name: str = "") -> RealAlgebra:
        """``RealAlgebra.of(("R", 1, 4), ("H", 1))`` style constructor."""
        return cls(tuple(Summand(*it) for it in items), name)

    def is_finite(self) -> bool:
        return all(s.multiplicity is not OMEGA for s in self.summands)

    def real_dimension(self) -> int:
        return sum(s.real_dimension() for s in self.summands)

    def __add__(self, other: RealAlgebra) -> RealAlgebra:
        return RealAlgebra(self.summands + other.summands, self.name)

    def __str__(self):
        return " ⊕ ".join(map(str, self.summands)) if self.summands else "0"

    def to_json(self) -> list:
        return [[s.ring, s.size, mult_to_json(s.multiplicity)] for s in self.summands]

    @classmethod
    def from_json(cls, data, name: str = "") -> RealAlgebra:
        try:
            return cls(tuple(Summand(str(r), int(n), mult_from_json(m)) for r, n, m in data), name)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"malformed algebra description: {exc}") from exc


def complexify(A: RealAlgebra) -> RealAlgebra:
    out = []
    for s in A.summands:
        if s.ring == "R":
            out.append(Summand("C", s.size, s.multiplicity))
        elif s.ring == "C":
            out.append(Summand("C", s.size, mul_mult(2, s.multiplicity)))
        else:
            out.append(Summand("C", 2 * s.size, s.multiplicity))
    C = RealAlgebra(tuple(out), A.name)
    if A.is_finite() and C.real_dimension() != 2 * A.real_dimension():
        raise DimensionMismatch("complexification must double the real dimension")
    return C


# D ⊗_R D' as (ring, size, count)
_DIVISION_TENSOR = {
    ("R", "R"): ("R", 1, 1), ("R", "C"): ("C", 1, 1), ("R", "H"): ("H", 1, 1),
    ("C", "C"): ("C", 1, 2), ("C", "H"): ("C", 2, 1), ("H", "H"): ("R", 4, 1),
}


def _division_tensor(a: str, b: str):
    key = (a, b) if _RING_ORDER[a] <= _RING_ORDER[b] else (b, a)
    return _DIVISION_TENSOR[key]


def tensor_real(A: RealAlgebra, B: RealAlgebra) -> RealAlgebra:
    if not (A.is_finite() and B.is_finite()):
        raise InfiniteUnsupported("tensor products are only formed for finite sums")
    out = []
    for s in A.summands:
        for t in B.summands:
            ring, size, count = _division_tensor(s.ring, t.ring)
            out.append(Summand(ring, s.size * t.size * size, s.multiplicity * t.multiplicity * count))
    C = RealAlgebra(tuple(out))
    if C.real_dimension() != A.real_dimension() * B.real_dimension():
        raise DimensionMismatch("tensor product dimension is not multiplicative")
    return C


# ---------------------------------------------------------------------------
# types from character tables


@dataclass(frozen=True)
class DualInvolution:
    """Permutation of irreps induced by complex conjugation, with type labels."""

    permutation: tuple[int, ...]
    types: tuple[IrrepType, ...]

    def __post_init__(self):
        p = self.permutation
        if any(p[p[a]] != a for a in range(len(p))):
            raise PairingFailure("conjugation pairing is not an involution")
        for a, t in enumerate(self.types):
            if (p[a] == a) == (t is IrrepType.COMPLEX):
                raise PairingFailure(f"irrep {a}: type {t.value} inconsistent with pairing")

    def fixed_points(self, kind: IrrepType | None = None) -> list[int]:
        return [a for a, b in enumerate(self.permutation)
                if a == b and (kind is None or self.types[a] is kind)]

    def pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in enumerate(self.permutation) if a < b]

    def counts(self) -> dict[str, int]:
        return {
            "real": len(self.fixed_points(IrrepType.REAL)),
            "quaternionic": len(self.fixed_points(IrrepType.QUATERNIONIC)),
            "complex_pairs": len(self.pairs()),
        }


def fs_indicators(T: CharacterTable) -> list[int]:
    """Frobenius-Schur indicators (1/|G|) Σ_g χ(g²), summed classwise."""
    sizes = np.asarray(T.class_sizes, dtype=float)
    sq = list(T.squaring_map)
    raw = (T.values[:, sq] * sizes).sum(axis=1) / T.group_order
    out = []
    for a, z in enumerate(raw):
        nu = round(z.real)
        if abs(z - nu) >= INDICATOR_TOL or nu not in (-1, 0, 1):
            raise NonIntegralIndicator(f"irrep {a}: indicator {z:.6g} is not in {{-1, 0, 1}}")
        out.append(int(nu))
    return out


def classify_types(T: CharacterTable) -> DualInvolution:
    nus = fs_indicators(T)
    perm = list(range(len(nus)))
    for a, nu in enumerate(nus):
        if nu != 0:
            continue
        partners = [b for b in conjugate_partner(T.values, a) if b != a and nus[b] == 0]
        if len(partners) != 1:
            raise PairingFailure(f"irrep {a} has {len(partners)} complex-conjugate partners")
        perm[a] = partners[0]
    return DualInvolution(tuple(perm), tuple(IrrepType.from_indicator(nu) for nu in nus))


def wedderburn_real(T: CharacterTable, name: str = "") -> RealAlgebra:
    """Real group algebra: M_n(R) per real irrep, M_{n/2}(H) per quaternionic
    irrep and one M_n(C) per conjugate pair, n the complex degree."""
    inv = classify_types(T)
    dims = T.dims
    out = []
    for a, t in enumerate(inv.types):
        n = dims[a]
        if t is IrrepType.REAL:
            out.append(Summand("R", n))
        elif t is IrrepType.QUATERNIONIC:
            if n % 2:
                raise OddQuaternionicDim(f"irrep {a} is quaternionic of odd degree {n}")
            out.append(Summand("H", n // 2))
    for a, _ in inv.pairs():
        out.append(Summand("C", dims[a]))
    A = RealAlgebra(tuple(out), name)
    if A.real_dimension() != T.group_order:
        raise DimensionMismatch(f"real dimension {A.real_dimension()} != group order {T.group_order}")
    return A


def complex_wedderburn(T: CharacterTable) -> RealAlgebra:
    """⊕ M_d(C) over the complex irreps."""
    return RealAlgebra(tuple(Summand("C", d) for d in T.dims))


# ---------------------------------------------------------------------------
# structure constants: builders


def division_ring_constants(ring: str) -> list:
    if ring == "R":
        return [[[1]]]
    if ring == "C":
        c = [[[0] * 2 for _ in range(2)] for _ in range(2)]
        c[0][0][0] = c[0][1][1] = c[1][0][1] = 1
        c[1][1][0] = -1
        return c
    if ring == "H":
        from realcstar.groups import _QMUL
        c = [[[0] * 4 for _ in range(4)] for _ in range(4)]
        for (a, b), (s, u) in _QMUL.items():
            c[a][b][u] = s
        return c
    raise ValueError(f"unknown division ring {ring!r}")


def tensor_constants(c1, c2) -> list:
    n1, n2 = len(c1), len(c2)
    n = n1 * n2
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            for k in range(n1):
                if not c1[i][j][k]:
                    continue
                for p in range(n2):
                    for q in range(n2):
                        for r in range(n2):
                            if c2[p][q][r]:
                                c[i * n2 + p][j * n2 + q][k * n2 + r] = c1[i][j][k] * c2[p][q][r]
    return c


def matrix_algebra_constants(n: int) -> list:
    """M_n(R) on the basis of matrix units E_ab, index a*n + b."""
    d = n * n
    c = [[[0] * d for _ in range(d)] for _ in range(d)]
    for a in range(n):
        for b in range(n):
            for e in range(n):
                c[a * n + b][b * n + e][a * n + e] = 1
    return c


def group_algebra_constants(G) -> list:
    n = G.order
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for g in range(n):
        for h in range(n):
            c[g][h][int(G.mult[g, h])] = 1
    return c


def direct_sum_constants(*cs) -> list:
    n = sum(len(c) for c in cs)
    out = [[[0] * n for _ in range(n)] for _ in range(n)]
    off = 0
    for c in cs:
        m = len(c)
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    out[off + i][off + j][off + k] = c[i][j][k]
        off += m
    return out


# ---------------------------------------------------------------------------
# structure constants: exact decomposition


def _rref(rows: list[list[Fraction]], ncols: int):
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def _nullspace(rows, ncols: int) -> list[list[Fraction]]:
    R, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def _solve(rows, rhs, ncols: int):
    """One solution of rows · x = rhs, or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    R, pivots = _rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return x


def signature(S) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a rational symmetric matrix."""
    A = [[Fraction(x) for x in r] for r in S]
    n = len(A)
    active = list(range(n))
    pos = neg = 0
    while active:
        i = next((k for k in active if A[k][k] != 0), None)
        if i is None:
            hit = next(((k, l) for k in active for l in active if A[k][l] != 0), None)
            if hit is None:
                break
            i, j = hit
            # e_i -> e_i + e_j makes the (i, i) entry 2 A[i][j] != 0
            A[i] = [x + y for x, y in zip(A[i], A[j])]
            for row in A:
                row[i] += row[j]
        p = A[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(i)
        for j in active:
            f = A[j][i] / p
            if f:
                A[j] = [x - f * y for x, y in zip(A[j], A[i])]
                for row in A:
                    row[j] -= f * row[i]
    return pos, neg, n - pos - neg


class _Algebra:
    def __init__(self, constants):
        c = [[[Fraction(x) for x in row] for row in mat] for mat in constants]
        n = len(c)
        if n == 0 or any(len(m) != n or any(len(r) != n for r in m) for m in c):
            raise FormatError("structure constants must form an n x n x n grid")
        self.n = n
        self.c = c

    def mul(self, x, y):
        n, c = self.n, self.c
        out = [Fraction(0)] * n
        for i in range(n):
            if x[i] == 0:
                continue
            for j in range(n):
                if y[j] == 0:
                    continue
                f = x[i] * y[j]
                row = c[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] += f * row[k]
        return out

    def basis(self, i):
        v = [Fraction(0)] * self.n
        v[i] = Fraction(1)
        return v

    def check_associative(self):
        n = self.n
        den = reduce(lcm, (x.denominator for m in self.c for r in m for x in r), 1)
        ints = [[[int(x * den) for x in r] for r in m] for m in self.c]
        big = max(abs(x) for m in ints for r in m for x in r)
        dtype = np.int64 if big <= 2 ** 20 and n <= 256 else object
        C = np.array(ints, dtype=dtype)
        # (e_i e_j) e_l vs e_i (e_j e_l), coefficient on e_m
        left = np.tensordot(C, C, axes=([2], [0]))              # i j l m
        right = np.tensordot(C, C, axes=([1], [2]))             # i k m ; j l k -> i m j l
        right = np.transpose(right, (0, 2, 3, 1))
        bad = np.argwhere(left != right)
        if len(bad):
            i, j, l, _ = bad[0]
            raise NotAssociative(f"(e{i} e{j}) e{l} != e{i} (e{j} e{l})")

    def unit(self):
        n, c = self.n, self.c
        # u e_j = e_j and e_j u = e_j for every j
        rows, rhs = [], []
        for j in range(n):
            for k in range(n):
                rows.append([c[i][j][k] for i in range(n)])
                rhs.append(Fraction(int(j == k)))
                rows.append([c[j][i][k] for i in range(n)])
                rhs.append(Fraction(int(j == k)))
        u = _solve(rows, rhs, n)
        if u is None:
            raise NotSemisimple("algebra has no two-sided unit")
        return u

    def traces(self):
        return [sum(self.c[k][i][i] for i in range(self.n)) for k in range(self.n)]

    def basis_gram(self):
        """Trace form Tr(L_{e_i e_j}) on the standard basis."""
        if not hasattr(self, "_gram"):
            tau = self.traces()
            n = self.n
            self._gram = [[sum(self.c[i][j][k] * tau[k] for k in range(n)) for j in range(n)]
                          for i in range(n)]
        return self._gram

    def trace_gram(self, vectors):
        G = self.basis_gram()
        GV = [[sum(G[i][j] * v[j] for j in range(self.n) if v[j]) for i in range(self.n)]
              for v in vectors]
        return [[sum(a * b for a, b in zip(u, gv) if a) for gv in GV] for u in vectors]

    def center(self):
        n, c = self.n, self.c
        rows = []
        for j in range(n):
            for k in range(n):
                rows.append([c[i][j][k] - c[j][i][k] for i in range(n)])
        return _nullspace(rows, n)


def _min_poly(alg: _Algebra, x, one):
    powers = [one]
    t = sympy.Symbol("t")
    while True:
        nxt = alg.mul(powers[-1], x)
        k = len(powers)
        # solve Σ a_i x^i = x^k
        rows = [[powers[i][r] for i in range(k)] for r in range(alg.n)]
        sol = _solve(rows, nxt, k)
        if sol is not None:
            coeffs = [Fraction(1)] + [-a for a in reversed(sol)]
            return sympy.Poly([sympy.Rational(q.numerator, q.denominator) for q in coeffs], t, domain="QQ")
        powers.append(nxt)


def _eval_poly(alg: _Algebra, poly: sympy.Poly, x, one):
    out = [Fraction(0)] * alg.n
    for coeff in poly.all_coeffs():
        out = alg.mul(out, x)
        q = Fraction(int(coeff.p), int(coeff.q))
        out = [a + q * b for a, b in zip(out, one)]
    return out


def _span_basis(vectors, n):
    R, _ = _rref([list(v) for v in vectors], n)
    return R


def decompose_by_structure_constants(dim: int, constants, seeds=range(8)) -> RealAlgebra:
    """Wedderburn decomposition from structure constants ``e_i e_j = Σ_k c[i][j][k] e_k``.

    Exact over ℚ.  Raises NotAssociative, or NotSemisimple when the trace
    form is degenerate.
    """
    alg = _Algebra(constants)
    if alg.n != dim:
        raise FormatError(f"constants describe a {alg.n}-dimensional algebra, not {dim}")
    alg.check_associative()
    one = alg.unit()
    if signature(alg.basis_gram())[2]:
        raise NotSemisimple("trace form is degenerate, so the radical is nonzero")
    Z = alg.center()
    z = len(Z)
    for seed in seeds:
        rng = np.random.default_rng(seed)
        coeffs = [int(a) for a in rng.integers(-9, 10, size=z)]
        x = [sum(a * v[k] for a, v in zip(coeffs, Z)) for k in range(dim)]
        m = _min_poly(alg, x, one)
        if m.degree() == z:
            break
    else:
        raise NotSemisimple("no generic central element found")
    if sympy.gcd(m, m.diff()).degree() > 0:
        raise NotSemisimple("minimal polynomial of a central element is not square-free")
    out = []
    for f, _ in m.factor_list()[1]:
        g = sympy.Poly(sympy.exquo(m.as_expr(), f.as_expr()), m.gen, domain="QQ")
        s, _, h = sympy.gcdex(g, f)
        e = _eval_poly(alg, (s * g).rem(m), x, one)
        block = _span_basis([alg.mul(e, alg.basis(i)) for i in range(dim)], dim)
        d = f.degree()
        real_roots = int(f.count_roots())
        pairs = (d - real_roots) // 2
        bdim = len(block)
        n2, r = divmod(bdim, d)
        n = isqrt(n2)
        if r or n * n != n2:
            raise DimensionMismatch(f"block of dimension {bdim} does not split over a degree-{d} center")
        pos, neg, _ = signature(alg.trace_gram(block))
        sig = pos - neg
        p = (real_roots + sig // n) // 2
        q = real_roots - p
        if p < 0 or q < 0 or (q and n % 2):
            raise DimensionMismatch("trace-form signature inconsistent with a central simple block")
        out += [Summand("R", n, p), Summand("C", n, pairs)]
        if q:
            out.append(Summand("H", n // 2, q))
    A = RealAlgebra(tuple(out))
    if A.real_dimension() != dim:
        raise DimensionMismatch(f"recovered dimension {A.real_dimension()} != {dim}")
    return A
