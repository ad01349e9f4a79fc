"""Complex character tables of finite groups.

Characters come from the common eigenvectors of the class multiplication
matrices (Burnside's method): a seeded random integer combination of the
class matrices is diagonalized numerically, each eigenvector is refined by
an SVD null-space solve, and the resulting table is accepted only after the
orthogonality relations hold to 1e-8.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from realcstar.errors import DegenerateEigenspaces, FormatError, OrthogonalityViolation
from realcstar.groups import ClassData, FiniteGroup, class_matrix, conjugacy_data

ORTHO_TOL = 1e-8
ENTRY_TOL = 1e-9
ROUND_DIGITS = 6
SEEDS = tuple(range(12))
MAX_GROUP_ORDER = 5000


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group_order: int
    class_sizes: tuple[int, ...]
    squaring_map: tuple[int, ...]
    values: np.ndarray  # irrep x class, complex
    error_bound: float = 0.0
    group: FiniteGroup | None = field(default=None, repr=False)
    class_data: ClassData | None = field(default=None, repr=False)
    inverse_map: tuple[int, ...] | None = None

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def num_irreps(self) -> int:
        return self.values.shape[0]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(int(round(x.real)) for x in self.values[:, 0])

    def to_json(self) -> dict:
        return {
            "group_order": self.group_order,
            "class_sizes": list(self.class_sizes),
            "squaring_map": list(self.squaring_map),
            "characters": [[[float(z.real), float(z.imag)] for z in row] for row in self.values],
        }


def _row_key(row):
    return tuple(v for z in row for v in (-round(z.real, ROUND_DIGITS) + 0.0,
                                          -round(z.imag, ROUND_DIGITS) + 0.0))


def _clean(values: np.ndarray) -> np.ndarray:
    # drop float noise below the entry tolerance, leave everything else alone
    re = np.where(np.abs(values.real - np.round(values.real)) < 1e-12, np.round(values.real), values.real)
    im = np.where(np.abs(values.imag - np.round(values.imag)) < 1e-12, np.round(values.imag), values.imag)
    return re + 1j * im


def verify_table(order: int, class_sizes, values: np.ndarray) -> float:
    """Check degrees and both orthogonality relations; return the worst residual.

    Raises FormatError for malformed degree data and OrthogonalityViolation
    (naming the offending pair) when a relation fails beyond 1e-8.
    """
    sizes = np.asarray(class_sizes, dtype=float)
    h = len(class_sizes)
    if values.shape != (h, h):
        raise FormatError(f"need a square table with one row per class, got {values.shape}")
    if sum(class_sizes) != order:
        raise FormatError(f"class sizes sum to {sum(class_sizes)}, not the group order {order}")
    first = values[:, 0]
    dims = np.round(first.real)
    if np.max(np.abs(first - dims)) > 1e-6 or (dims < 1).any():
        raise FormatError("identity column must hold positive integer degrees")
    if int(np.sum(dims.astype(np.int64) ** 2)) != order:
        raise FormatError(f"sum of squared degrees is {int(np.sum(dims ** 2))}, not {order}")
    gram = (values * sizes) @ values.conj().T / order
    resid = np.abs(gram - np.eye(h))
    a, b = np.unravel_index(np.argmax(resid), resid.shape)
    worst = float(resid[a, b])
    if worst > ORTHO_TOL:
        raise OrthogonalityViolation((int(a), int(b)), worst, "row")
    col = values.conj().T @ values
    expected = np.diag(order / sizes)
    cres = np.abs(col - expected)
    a, b = np.unravel_index(np.argmax(cres), cres.shape)
    if cres[a, b] > ORTHO_TOL:
        raise OrthogonalityViolation((int(a), int(b)), float(cres[a, b]), "column")
    return max(worst, float(cres[a, b]))


def _eigvec(A: np.ndarray, lam: complex) -> np.ndarray:
    _, s, vh = np.linalg.svd(A - lam * np.eye(A.shape[0]))
    v = vh[-1].conj()
    return v / v[0]


def compute_character_table(G: FiniteGroup, D: ClassData | None = None,
                            max_order: int = MAX_GROUP_ORDER) -> CharacterTable:
    """Character table with rows sorted by degree, then by rounded values (descending)."""
    if G.order > max_order:
        raise DegenerateEigenspaces(f"group order {G.order} exceeds bound {max_order}")
    if D is None:
        D = conjugacy_data(G)
    h = D.num_classes
    sizes = np.array(D.class_sizes, dtype=float)
    # eigenvectors of the transpose are the central characters ω_j = |C_j| χ(g_j) / χ(1)
    mats = [np.array(class_matrix(G, D, i).tolist(), dtype=float).T for i in range(h)]
    for seed in SEEDS:
        rng = np.random.default_rng(seed)
        coeffs = rng.integers(1, 1000, size=h)
        A = sum(c * M for c, M in zip(coeffs, mats))
        lams = np.linalg.eigvals(A)
        gaps = np.abs(lams[:, None] - lams[None, :]) + np.eye(h) * 1e300
        if h > 1 and gaps.min() < 1e-6 * max(1.0, np.abs(lams).max()):
            continue
        omegas = np.array([_eigvec(A, lam) for lam in lams])
        norms = np.sum(np.abs(omegas) ** 2 / sizes, axis=1)
        degrees = np.sqrt(G.order / norms)
        if np.max(np.abs(degrees - np.round(degrees))) > 1e-6:
            continue
        chi = np.round(degrees)[:, None] * omegas / sizes
        chi = _clean(chi)
        order = sorted(range(h), key=lambda a: (int(round(chi[a, 0].real)), _row_key(chi[a])))
        chi = chi[order]
        try:
            err = verify_table(G.order, D.class_sizes, chi)
        except OrthogonalityViolation:
            continue
        if err > ENTRY_TOL:
            continue
        return CharacterTable(G.order, D.class_sizes, D.squaring_map, chi, err, G, D, D.inverse_map)
    raise DegenerateEigenspaces(f"no separating class-matrix combination among seeds {SEEDS}")


def table_from_json(data) -> CharacterTable:
    try:
        order = int(data["group_order"])
        sizes = tuple(int(x) for x in data["class_sizes"])
        sq = tuple(int(x) for x in data["squaring_map"])
        rows = data["characters"]
        values = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed character table: {exc}") from exc
    if values.ndim != 2:
        raise FormatError("characters must be a grid of [re, im] pairs")
    if len(sq) != len(sizes) or any(not 0 <= s < len(sizes) for s in sq):
        raise FormatError("squaring_map must send each class index to a class index")
    err = verify_table(order, sizes, values)
    inv = data.get("inverse_map")
    return CharacterTable(order, sizes, sq, values, err,
                          inverse_map=tuple(inv) if inv is not None else None)


def ingest_character_table(path) -> CharacterTable:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    return table_from_json(data)


def conjugate_partner(values: np.ndarray, a: int, tol: float = 1e-6) -> list[int]:
    """Rows b whose characters are the complex conjugate of row a."""
    target = values[a].conj()
    return [b for b in range(values.shape[0]) if np.max(np.abs(values[b] - target)) < tol]


def format_table(T: CharacterTable, digits: int = 4) -> str:
    def fmt(z):
        re, im = round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0
        if im == 0:
            return f"{re:g}"
        if re == 0:
            return f"{im:g}i"
        return f"{re:g}{im:+g}i"

    cells = [[fmt(z) for z in row] for row in T.values]
    width = max(len(c) for row in cells for c in row)
    head = " ".join(f"{s:>{width}}" for s in T.class_sizes)
    lines = ["size " + head]
    lines += [f"χ{a:<3} " + " ".join(f"{c:>{width}}" for c in row) for a, row in enumerate(cells)]
    return "\n".join(lines)
