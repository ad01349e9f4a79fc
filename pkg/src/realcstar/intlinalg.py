"""Exact integer linear algebra: Smith normal form, kernels, cokernels and
finitely generated abelian groups in invariant-factor form.

All arithmetic uses Python integers, so intermediate entries may grow
without overflow.  Pivoting is deterministic: the nonzero entry of
smallest absolute value wins, ties broken by (row, column) position.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable, Sequence

from sympy import factorint

from realcstar.errors import ContainmentViolation

__all__ = [
    "IntMatrix",
    "FgAbGroup",
    "smith_normal_form",
    "smith_decomposition",
    "cokernel",
    "kernel_basis",
    "subquotient",
    "hermite_rows",
]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")
        for r in self.entries:
            for x in r:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, data: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        data = [tuple(int(x) for x in row) for row in data]
        if cols is None:
            if not data:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, tuple(data))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> IntMatrix:
        n = len(diag)
        return cls(n, n, tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else
                         tuple(() for _ in range(self.cols)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return IntMatrix(self.rows, other.cols, tuple(_matmul(self.entries, other.entries, other.cols)))

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)))

    def __neg__(self) -> IntMatrix:
        return IntMatrix(self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def __pow__(self, k: int) -> IntMatrix:
        if self.rows != self.cols or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        out, base = IntMatrix.identity(self.rows), self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def hstack(self, other: IntMatrix) -> IntMatrix:
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix(self.rows, self.cols + other.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


def _matmul(a, b, bcols):
    bt = list(zip(*b)) if b else [()] * bcols
    return [tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a]


def _as_matrix(M) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_decomposition(M: IntMatrix | Sequence[Sequence[int]]):
    """Return ``(diag, U, V)`` with ``U @ M @ V`` diagonal.

    ``diag`` holds the nonzero diagonal entries d1 | d2 | ... (1s kept);
    its length is the rank.  ``U`` and ``V`` are unimodular.
    """
    M = _as_matrix(M)
    r, c = M.rows, M.cols
    A = [list(row) for row in M.entries]
    U = [[int(i == j) for j in range(r)] for i in range(r)]
    V = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    diag = []
    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            for j in range(t, c):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, r):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, c):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                best = None
                for i in range(t, r):
                    v = A[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                for j in range(t, c):
                    v = A[t][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        diag.append(A[t][t])
        t += 1
    return diag, IntMatrix(r, r, tuple(map(tuple, U))), IntMatrix(c, c, tuple(map(tuple, V)))


def smith_normal_form(M: IntMatrix | Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors d1 | d2 | ... of ``M``; ``len`` of the result is the rank."""
    return smith_decomposition(M)[0]


# ---------------------------------------------------------------------------
# finitely generated abelian groups


def _primary_parts(orders: Iterable[int]) -> dict[int, list[int]]:
    parts: dict[int, list[int]] = {}
    for d in orders:
        for p, e in factorint(d).items():
            parts.setdefault(p, []).append(p ** e)
    return parts


@dataclass(frozen=True)
class FgAbGroup:
    """ℤ^free_rank ⊕ ℤ/d1 ⊕ ... ⊕ ℤ/dk with d1 | ... | dk and every di >= 2."""

    free_rank: int = 0
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        f = self.invariant_factors
        if any(d < 2 for d in f):
            raise ValueError(f"invariant factors must be >= 2: {f}")
        if any(f[i + 1] % f[i] for i in range(len(f) - 1)):
            raise ValueError(f"invariant factors must form a divisor chain: {f}")

    @classmethod
    def from_orders(cls, free_rank: int = 0, orders: Iterable[int] = ()) -> FgAbGroup:
        """Canonicalize ℤ^free_rank ⊕ ⊕ ℤ/n; n == 0 counts as ℤ, n == 1 is dropped."""
        orders = list(orders)
        free_rank += sum(1 for n in orders if n == 0)
        orders = [abs(n) for n in orders if abs(n) > 1]
        parts = _primary_parts(orders)
        for p in parts:
            parts[p].sort(reverse=True)
        k = max((len(v) for v in parts.values()), default=0)
        factors = [prod(v[i] for v in parts.values() if i < len(v)) for i in range(k)]
        return cls(free_rank, tuple(sorted(factors)))

    @classmethod
    def free(cls, n: int) -> FgAbGroup:
        return cls(n, ())

    @classmethod
    def cyclic(cls, n: int) -> FgAbGroup:
        return cls.from_orders(0, [n])

    @classmethod
    def trivial(cls) -> FgAbGroup:
        return cls(0, ())

    def __add__(self, other: FgAbGroup) -> FgAbGroup:
        return FgAbGroup.from_orders(self.free_rank + other.free_rank,
                                     self.invariant_factors + other.invariant_factors)

    def __mul__(self, k: int) -> FgAbGroup:
        return FgAbGroup.from_orders(self.free_rank * k, self.invariant_factors * k)

    __rmul__ = __mul__

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        return prod(self.invariant_factors) if self.free_rank == 0 else None

    def torsion_rank(self, p: int) -> int:
        """Number of cyclic summands of order divisible by the prime ``p``."""
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def primary_cyclics(self) -> list[int]:
        """Elementary divisors (prime powers) of the torsion part, sorted."""
        return sorted(q for v in _primary_parts(self.invariant_factors).values() for q in v)

    def to_json(self) -> list:
        return [self.free_rank, list(self.invariant_factors)]

    @classmethod
    def from_json(cls, data) -> FgAbGroup:
        rank, factors = data
        return cls.from_orders(int(rank), [int(d) for d in factors])

    def __str__(self):
        if self.is_trivial():
            return "0"
        pieces = []
        if self.free_rank:
            pieces.append("ℤ" if self.free_rank == 1 else f"ℤ{_sup(self.free_rank)}")
        i = 0
        f = self.invariant_factors
        while i < len(f):
            j = i
            while j < len(f) and f[j] == f[i]:
                j += 1
            n = j - i
            pieces.append(f"ℤ/{f[i]}" if n == 1 else f"(ℤ/{f[i]}){_sup(n)}")
            i = j
        return " ⊕ ".join(pieces)


_SUP = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


def _sup(n: int) -> str:
    return str(n).translate(_SUP)


# ---------------------------------------------------------------------------
# kernels and quotients


def cokernel(M: IntMatrix | Sequence[Sequence[int]]) -> FgAbGroup:
    """ℤ^rows / image(M)."""
    M = _as_matrix(M)
    diag = smith_normal_form(M)
    return FgAbGroup.from_orders(M.rows - len(diag), diag)


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Row Hermite normal form of the lattice spanned by ``vectors`` (zero rows dropped)."""
    A = [list(v) for v in vectors]
    if not A:
        return []
    n = len(A[0])
    out_row = 0
    for col in range(n):
        rows = [i for i in range(out_row, len(A)) if A[i][col]]
        if not rows:
            continue
        while True:
            rows = [i for i in range(out_row, len(A)) if A[i][col]]
            piv = min(rows, key=lambda i: (abs(A[i][col]), i))
            A[out_row], A[piv] = A[piv], A[out_row]
            done = True
            for i in range(out_row + 1, len(A)):
                if A[i][col]:
                    q = A[i][col] // A[out_row][col]
                    A[i] = [a - q * b for a, b in zip(A[i], A[out_row])]
                    done = done and A[i][col] == 0
            if done:
                break
        if A[out_row][col] < 0:
            A[out_row] = [-a for a in A[out_row]]
        p = A[out_row][col]
        for i in range(out_row):
            q = A[i][col] // p
            if q:
                A[i] = [a - q * b for a, b in zip(A[i], A[out_row])]
        out_row += 1
    return [tuple(r) for r in A[:out_row]]


def kernel_basis(M: IntMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    """Columns of the result form a ℤ-basis of ker(M), in Hermite form."""
    M = _as_matrix(M)
    diag, _, V = smith_decomposition(M)
    cols = V.columns()[len(diag):]
    basis = hermite_rows(cols)
    if not basis:
        return IntMatrix.zeros(M.cols, 0)
    return IntMatrix.from_rows(basis).T


def _left_inverse_of_saturated(K: IntMatrix) -> IntMatrix:
    # K has full column rank and a saturated image, so its Smith form is [I; 0].
    diag, U, V = smith_decomposition(K)
    k = K.cols
    if len(diag) != k or any(d != 1 for d in diag):
        raise ValueError("basis matrix is not saturated")
    proj = IntMatrix(k, K.rows, tuple(tuple(int(i == j) for j in range(K.rows)) for i in range(k)))
    return V @ proj @ U


def subquotient(ker_of: IntMatrix | Sequence[Sequence[int]],
                im_of: IntMatrix | Sequence[Sequence[int]]) -> FgAbGroup:
    """ker(ker_of) / image(im_of) for composable ℤ-linear maps.

    ``im_of`` maps ℤ^q → ℤ^n and ``ker_of`` maps ℤ^n → ℤ^p.  Raises
    ContainmentViolation unless ``ker_of @ im_of == 0``.
    """
    A, B = _as_matrix(ker_of), _as_matrix(im_of)
    if A.cols != B.rows:
        raise ValueError(f"maps are not composable: {A.shape} after {B.shape}")
    if not (A @ B).is_zero():
        raise ContainmentViolation("image of the second map is not contained in the kernel of the first")
    K = kernel_basis(A)
    if K.cols == 0:
        return FgAbGroup.trivial()
    X = _left_inverse_of_saturated(K) @ B
    return cokernel(X)
