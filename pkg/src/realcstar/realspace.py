"""Finite simplicial complexes with a simplicial involution.

Provides the fixed subcomplex and its components, sign choices on those
components, cohomology mod 2, integer cohomology, and cohomology of the
quotient by a free involution with the sign-twisted integer coefficients.
The twisted groups come from the anti-invariant cochains on the double
cover, so no quotient complex is ever built.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from realcstar.errors import FormatError, InvalidComplex, MixedInvolutionUnsupported, NotFree
from realcstar.intlinalg import FgAbGroup, IntMatrix, subquotient

SIGN_LISTING_CAP = 256

Simplex = tuple[int, ...]


def _perm_sign(seq: Sequence[int]) -> int:
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def _f2_rank(rows: Iterable[int]) -> int:
    """Rank over the field with two elements of rows given as bit masks."""
    basis: dict[int, int] = {}  # leading bit -> row
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


@dataclass(frozen=True, eq=False)
class SimplicialRealSpace:
    num_vertices: int
    simplices: frozenset
    involution: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        n = self.num_vertices
        inv = tuple(int(i) for i in self.involution)
        object.__setattr__(self, "involution", inv)
        if len(inv) != n or sorted(inv) != list(range(n)):
            raise InvalidComplex("involution must be a permutation of the vertices")
        if any(inv[inv[v]] != v for v in range(n)):
            raise InvalidComplex("involution must square to the identity")
        simp = frozenset(tuple(sorted(s)) for s in self.simplices)
        for s in simp:
            if not s or len(set(s)) != len(s) or not all(0 <= v < n for v in s):
                raise InvalidComplex(f"bad simplex {s}")
            for k in range(len(s) - 1, 0, -1):
                for face in itertools.combinations(s, k):
                    if face not in simp:
                        raise InvalidComplex(f"face {face} of {s} is missing")
            if self._image(s) not in simp:
                raise InvalidComplex(f"involution does not map {s} to a simplex")
        for v in range(n):
            if (v,) not in simp:
                raise InvalidComplex(f"vertex {v} lies in no simplex")
        object.__setattr__(self, "simplices", simp)

    @classmethod
    def from_maximal(cls, num_vertices: int, maximal: Iterable[Sequence[int]],
                     involution: Sequence[int] | None = None, name: str = "") -> SimplicialRealSpace:
        closed = set()
        for s in maximal:
            s = tuple(sorted(int(v) for v in s))
            for k in range(1, len(s) + 1):
                closed.update(itertools.combinations(s, k))
        inv = tuple(range(num_vertices)) if involution is None else tuple(involution)
        return cls(num_vertices, frozenset(closed), inv, name)

    def _image(self, s: Simplex) -> Simplex:
        return tuple(sorted(self.involution[v] for v in s))

    @cached_property
    def by_dim(self) -> dict[int, list[Simplex]]:
        out: dict[int, list[Simplex]] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        return {d: sorted(v) for d, v in out.items()}

    @property
    def dimension(self) -> int:
        return max(self.by_dim)

    def cells(self, n: int) -> list[Simplex]:
        return self.by_dim.get(n, [])

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(v) for d, v in self.by_dim.items())

    def maximal_simplices(self) -> list[Simplex]:
        simp = self.simplices
        out = [s for s in simp
               if not any(len(t) == len(s) + 1 and set(s) <= set(t) for t in self.cells(len(s)))]
        return sorted(out, key=lambda s: (len(s), s))

    def is_trivial(self) -> bool:
        return all(self.involution[v] == v for v in range(self.num_vertices))

    def is_free(self) -> bool:
        """No simplex is carried to itself (so no vertex or barycenter is fixed)."""
        return all(self._image(s) != s for s in self.simplices)

    def to_json(self) -> dict:
        return {"vertices": self.num_vertices,
                "maximal_simplices": [list(s) for s in self.maximal_simplices()],
                "involution": list(self.involution)}

    @classmethod
    def from_json(cls, data, name: str = "") -> SimplicialRealSpace:
        try:
            n = int(data["vertices"])
            maximal = [[int(v) for v in s] for s in data["maximal_simplices"]]
            inv = data.get("involution")
            inv = None if inv is None else [int(v) for v in inv]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed complex: {exc}") from exc
        return cls.from_maximal(n, maximal, inv, name)

    # -- cochain complex -----------------------------------------------------

    def coboundary(self, n: int) -> IntMatrix:
        """δ: C^n → C^{n+1}; rows indexed by (n+1)-simplices, columns by n-simplices."""
        src, tgt = self.cells(n), self.cells(n + 1)
        if n < 0:
            return IntMatrix.zeros(len(self.cells(0)), 0)
        index = {s: i for i, s in enumerate(src)}
        rows = []
        for t in tgt:
            row = [0] * len(src)
            for i in range(len(t)):
                row[index[t[:i] + t[i + 1:]]] += (-1) ** i
            rows.append(row)
        if not rows:
            return IntMatrix.zeros(0, len(src))
        return IntMatrix.from_rows(rows)

    def pullback(self, n: int) -> IntMatrix:
        """Matrix of ι* on C^n: (ι*c)(σ) = c(ισ) with ισ carrying its induced orientation."""
        cells = self.cells(n)
        index = {s: i for i, s in enumerate(cells)}
        rows = []
        for s in cells:
            img = [self.involution[v] for v in s]
            row = [0] * len(cells)
            row[index[tuple(sorted(img))]] = _perm_sign(img)
            rows.append(row)
        return IntMatrix.from_rows(rows) if rows else IntMatrix.zeros(0, 0)


# ---------------------------------------------------------------------------
# fixed points and signs


def fixed_components(X: SimplicialRealSpace) -> list[list[int]]:
    """Vertex sets of the connected components of the fixed subcomplex.

    Requires every simplex carried to itself to be fixed pointwise; a simplex
    whose vertices are swapped has a fixed barycenter that is not a vertex,
    so such complexes must be barycentrically subdivided first.
    """
    inv = X.involution
    for s in X.simplices:
        if X._image(s) == s and any(inv[v] != v for v in s):
            raise InvalidComplex(f"simplex {s} is flipped onto itself; subdivide first")
    fixed = [v for v in range(X.num_vertices) if inv[v] == v]
    parent = {v: v for v in fixed}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in X.cells(1):
        if a in parent and b in parent:
            parent[find(a)] = find(b)
    comps: dict[int, list[int]] = {}
    for v in fixed:
        comps.setdefault(find(v), []).append(v)
    return sorted(comps.values())


def enumerate_sign_choices(X: SimplicialRealSpace, cap: int = SIGN_LISTING_CAP):
    """(count, listing) of sign assignments to fixed components; listing stops at ``cap``."""
    k = len(fixed_components(X))
    listing = []
    for choice in itertools.product("+-", repeat=k):
        if len(listing) >= cap:
            break
        listing.append(choice)
    return 2 ** k, listing


# ---------------------------------------------------------------------------
# cohomology


def z2_cohomology(X: SimplicialRealSpace, n: int) -> FgAbGroup:
    if n < 0:
        raise ValueError("degree must be non-negative")

    def rank2(k):
        M = X.coboundary(k)
        if M.rows == 0 or M.cols == 0:
            return 0
        return _f2_rank(sum(1 << j for j, x in enumerate(row) if x % 2) for row in M.entries)

    dim = len(X.cells(n)) - rank2(n) - (rank2(n - 1) if n > 0 else 0)
    return FgAbGroup(0, (2,) * dim)


def integer_cohomology(X: SimplicialRealSpace, n: int) -> FgAbGroup:
    if n < 0:
        raise ValueError("degree must be non-negative")
    before = X.coboundary(n - 1) if n > 0 else IntMatrix.zeros(len(X.cells(0)), 0)
    return subquotient(X.coboundary(n), before)


def _antiinvariant_basis(X: SimplicialRealSpace, n: int) -> tuple[list[Simplex], dict]:
    """Orbit representatives and, per n-simplex, (representative index, coefficient).

    The basis cochain for representative σ is 1 on σ and -sign on ι(σ), where
    sign is the orientation sign of ι restricted to σ.
    """
    reps, coeff = [], {}
    for s in X.cells(n):
        if s in coeff:
            continue
        img = [X.involution[v] for v in s]
        t = tuple(sorted(img))
        if t == s:
            raise NotFree(f"simplex {s} is carried to itself")
        coeff[s] = (len(reps), 1)
        coeff[t] = (len(reps), -_perm_sign(img))
        reps.append(s)
    return reps, coeff


def _twisted_coboundary(X: SimplicialRealSpace, n: int) -> IntMatrix:
    src, src_coeff = _antiinvariant_basis(X, n)
    tgt, _ = _antiinvariant_basis(X, n + 1)
    if not tgt or not src:
        return IntMatrix.zeros(len(tgt), len(src))
    rows = []
    for t in tgt:
        # value of δ f_σ on the representative t
        row = [0] * len(src)
        for i in range(len(t)):
            face = t[:i] + t[i + 1:]
            j, c = src_coeff[face]
            row[j] += (-1) ** i * c
        rows.append(row)
    return IntMatrix.from_rows(rows)


def twisted_cohomology_quotient(X: SimplicialRealSpace, n: int) -> FgAbGroup:
    """Cohomology of X/ι with the sign-twisted integers, for a free involution."""
    if not X.is_free():
        raise NotFree("involution fixes a simplex; twisted quotient needs a free action")
    if n < 0:
        raise ValueError("degree must be non-negative")
    cur = _twisted_coboundary(X, n)
    prev = _twisted_coboundary(X, n - 1) if n > 0 else IntMatrix.zeros(cur.cols, 0)
    return subquotient(cur, prev)


# ---------------------------------------------------------------------------
# Brauer group data


class Regime(enum.Enum):
    TRIVIAL = "trivial"
    FREE = "free"


@dataclass(frozen=True)
class BrauerData:
    sign_group: FgAbGroup
    dd_group: FgAbGroup
    regime: Regime

    def total(self) -> FgAbGroup:
        return self.sign_group + self.dd_group

    def to_json(self) -> dict:
        return {"regime": self.regime.value, "sign_group": self.sign_group.to_json(),
                "dd_group": self.dd_group.to_json(), "total": self.total().to_json()}

    def __str__(self):
        return (f"regime {self.regime.value}: sign part {self.sign_group}, "
                f"Dixmier-Douady part {self.dd_group}, total {self.total()}")


def brauer_group(X: SimplicialRealSpace) -> BrauerData:
    if X.is_trivial():
        return BrauerData(z2_cohomology(X, 0), z2_cohomology(X, 2), Regime.TRIVIAL)
    if X.is_free():
        return BrauerData(FgAbGroup(), twisted_cohomology_quotient(X, 3), Regime.FREE)
    raise MixedInvolutionUnsupported(
        "involution is neither trivial nor free; only those two regimes are computed")


# ---------------------------------------------------------------------------
# subdivision and examples


def barycentric_subdivision(X: SimplicialRealSpace) -> SimplicialRealSpace:
    cells = sorted(X.simplices, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(cells)}
    maximal = []
    for top in X.maximal_simplices():
        for order in itertools.permutations(top):
            maximal.append([index[tuple(sorted(order[:k]))] for k in range(1, len(top) + 1)])
    inv = [index[X._image(s)] for s in cells]
    return SimplicialRealSpace.from_maximal(len(cells), maximal, inv, name=f"sd({X.name})")


def _cross_polytope_boundary(dim: int, name: str) -> SimplicialRealSpace:
    # vertices ±e_i stored as i and i + dim; facets pick one sign per axis
    facets = [[i + dim * b for i, b in enumerate(bits)] for bits in itertools.product((0, 1), repeat=dim)]
    inv = [(v + dim) % (2 * dim) for v in range(2 * dim)]
    return SimplicialRealSpace.from_maximal(2 * dim, facets, inv, name)


def hexagon_antipodal() -> SimplicialRealSpace:
    return SimplicialRealSpace.from_maximal(6, [(i, (i + 1) % 6) for i in range(6)],
                                            [(i + 3) % 6 for i in range(6)], "hexagon-antipodal")


def octahedron_antipodal() -> SimplicialRealSpace:
    return _cross_polytope_boundary(3, "octahedron-antipodal")


def sixteen_cell_antipodal() -> SimplicialRealSpace:
    return _cross_polytope_boundary(4, "16-cell-antipodal")


def torus_trivial() -> SimplicialRealSpace:
    def v(i, j):
        return 3 * (i % 3) + (j % 3)

    tris = []
    for i in range(3):
        for j in range(3):
            tris.append((v(i, j), v(i + 1, j), v(i + 1, j + 1)))
            tris.append((v(i, j), v(i, j + 1), v(i + 1, j + 1)))
    return SimplicialRealSpace.from_maximal(9, tris, None, "torus-trivial")


def point() -> SimplicialRealSpace:
    return SimplicialRealSpace.from_maximal(1, [(0,)], None, "point")


def circle_trivial() -> SimplicialRealSpace:
    return SimplicialRealSpace.from_maximal(3, [(0, 1), (1, 2), (0, 2)], None, "circle-trivial")


def hexagon_reflection() -> SimplicialRealSpace:
    """Circle with a reflection fixing two vertices (neither trivial nor free)."""
    return SimplicialRealSpace.from_maximal(6, [(i, (i + 1) % 6) for i in range(6)],
                                            [(-i) % 6 for i in range(6)], "hexagon-reflection")


def fixed_points(k: int = 8) -> SimplicialRealSpace:
    return SimplicialRealSpace.from_maximal(k, [(i,) for i in range(k)], None, f"{k}-fixed-points")


BUILTIN_SPACES = {
    "hexagon-antipodal": hexagon_antipodal,
    "octahedron-antipodal": octahedron_antipodal,
    "16-cell-antipodal": sixteen_cell_antipodal,
    "torus-trivial": torus_trivial,
    "point": point,
    "circle-trivial": circle_trivial,
    "hexagon-reflection": hexagon_reflection,
    "8-fixed-points": fixed_points,
}


def builtin_space(name: str) -> SimplicialRealSpace:
    if name not in BUILTIN_SPACES:
        raise FormatError(f"unknown space {name!r}; choose from {sorted(BUILTIN_SPACES)}")
    return BUILTIN_SPACES[name]()


def load_space(path) -> SimplicialRealSpace:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return SimplicialRealSpace.from_json(data, name=Path(path).stem)
