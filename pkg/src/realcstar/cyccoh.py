"""Cohomology and homology of a finite cyclic group ℤ/m with coefficients in ℤ^r.

A module is a generator matrix T with T^m = I.  The periodic resolution
alternates the maps 1 - T and N = 1 + T + ... + T^{m-1}, so every group
is a kernel modulo an image of one of those two matrices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from realcstar.errors import FormatError, InvalidComplex
from realcstar.intlinalg import FgAbGroup, IntMatrix, cokernel, subquotient


@dataclass(frozen=True)
class CyclicModule:
    m: int
    T: IntMatrix

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"group order must be positive, got {self.m}")
        if self.T.rows != self.T.cols:
            raise ValueError("generator matrix must be square")
        if self.T ** self.m != IntMatrix.identity(self.T.rows):
            raise InvalidComplex(f"generator does not satisfy T^{self.m} = I")

    @property
    def rank(self) -> int:
        return self.T.rows

    def one_minus_t(self) -> IntMatrix:
        return IntMatrix.identity(self.rank) - self.T

    def norm(self) -> IntMatrix:
        N = IntMatrix.zeros(self.rank, self.rank)
        P = IntMatrix.identity(self.rank)
        for _ in range(self.m):
            N = N + P
            P = P @ self.T
        return N

    def to_json(self) -> dict:
        return {"order": self.m, "matrix": self.T.tolist()}

    @classmethod
    def from_json(cls, data) -> CyclicModule:
        try:
            m = int(data["order"])
            T = IntMatrix.from_rows([[int(x) for x in row] for row in data["matrix"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed cyclic module: {exc}") from exc
        return cls(m, T)


def load_module(path) -> CyclicModule:
    try:
        return CyclicModule.from_json(json.loads(Path(path).read_text()))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


def trivial_module(m: int, r: int = 1) -> CyclicModule:
    return CyclicModule(m, IntMatrix.identity(r))


def sign_module(m: int) -> CyclicModule:
    """ℤ with the generator acting by -1 (m must be even)."""
    return CyclicModule(m, IntMatrix.from_rows([[-1]]))


def hyperbolic_module() -> CyclicModule:
    """ℤ² with ℤ/2 swapping the two basis vectors."""
    return CyclicModule(2, IntMatrix.from_rows([[0, 1], [1, 0]]))


def regular_module(m: int) -> CyclicModule:
    rows = [[int(j == (i - 1) % m) for j in range(m)] for i in range(m)]
    return CyclicModule(m, IntMatrix.from_rows(rows))


def _check_degree(n: int):
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")


def cohomology(M: CyclicModule, n: int) -> FgAbGroup:
    _check_degree(n)
    D, N = M.one_minus_t(), M.norm()
    zero = IntMatrix.zeros(M.rank, 0)
    if n == 0:
        return subquotient(D, zero)
    if n % 2:
        return subquotient(N, D)
    return subquotient(D, N)


def homology(M: CyclicModule, n: int) -> FgAbGroup:
    _check_degree(n)
    D, N = M.one_minus_t(), M.norm()
    if n == 0:
        return cokernel(D)
    if n % 2:
        return subquotient(D, N)
    return subquotient(N, D)
