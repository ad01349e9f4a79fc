"""Finite groups stored as full multiplication tables, with conjugacy
classes, the squaring and inversion class maps, and class multiplication
coefficients.

Element 0 of a group built from permutations is always the identity.
Multiplication follows composition of maps: ``mult[a, b]`` is the element
acting as ``x -> a(b(x))``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from realcstar.errors import FormatError, InvalidGroup, TooLarge
from realcstar.intlinalg import IntMatrix

DEFAULT_BOUND = 5000


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    order: int
    mult: np.ndarray
    identity: int
    name: str = ""

    def __post_init__(self):
        mult = np.array(self.mult, dtype=np.int64)
        mult.setflags(write=False)
        object.__setattr__(self, "mult", mult)
        _verify_group_law(mult, self.identity)

    @property
    def inverse(self) -> np.ndarray:
        return np.argmax(self.mult == self.identity, axis=1)

    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.ones(n, dtype=np.int64)
        power = np.arange(n)
        alive = power != self.identity
        k = 1
        while alive.any():
            power = self.mult[power, np.arange(n)]
            k += 1
            done = alive & (power == self.identity)
            orders[done] = k
            alive &= ~done
        return orders

    def is_abelian(self) -> bool:
        return bool((self.mult == self.mult.T).all())

    def relabel(self, perm) -> FiniteGroup:
        """Same group with element ``i`` renamed ``perm[i]``."""
        perm = np.asarray(perm)
        inv = np.argsort(perm)
        table = perm[self.mult[np.ix_(inv, inv)]]
        return FiniteGroup(self.order, table, int(perm[self.identity]), self.name)

    def __repr__(self):
        return f"FiniteGroup({self.name or '?'}, order={self.order})"


def _verify_group_law(mult: np.ndarray, identity: int):
    n = mult.shape[0]
    if mult.shape != (n, n) or n == 0:
        raise InvalidGroup("multiplication table must be a nonempty square grid")
    if mult.min() < 0 or mult.max() >= n:
        raise InvalidGroup("table entries out of range")
    ar = np.arange(n)
    if not (0 <= identity < n) or not ((mult[identity] == ar).all() and (mult[:, identity] == ar).all()):
        raise InvalidGroup("identity element does not act trivially")
    srt = np.sort(mult, axis=1)
    if not (srt == ar).all() or not (np.sort(mult, axis=0) == ar[:, None]).all():
        raise InvalidGroup("table is not a Latin square, so inverses fail")
    # Light's test: elements a with (x a) y == x (a y) for all x, y form a
    # submagma, so checking a generating set proves associativity.
    for a in _generating_set(mult, identity):
        if not (mult[mult[:, a]] == mult[:, mult[a]]).all():
            raise InvalidGroup(f"multiplication is not associative (middle factor {a})")


def _closure(mult: np.ndarray, elems) -> np.ndarray:
    C = np.unique(np.asarray(elems))
    while True:
        D = np.unique(np.concatenate([C, mult[np.ix_(C, C)].ravel()]))
        if len(D) == len(C):
            return C
        C = D


def _generating_set(mult: np.ndarray, identity: int) -> list[int]:
    n = mult.shape[0]
    gens: list[int] = []
    inside = np.zeros(n, dtype=bool)
    inside[identity] = True
    for g in range(n):
        if not inside[g]:
            gens.append(g)
            inside[:] = False
            inside[_closure(mult, [identity] + gens)] = True
    return gens


def from_table(table, name: str = "") -> FiniteGroup:
    mult = np.array(table, dtype=np.int64)
    if mult.ndim != 2:
        raise InvalidGroup("multiplication table must be two-dimensional")
    ar = np.arange(mult.shape[0])
    ids = [e for e in range(mult.shape[0]) if (mult[e] == ar).all()]
    if not ids:
        raise InvalidGroup("no identity element")
    return FiniteGroup(mult.shape[0], mult, ids[0], name)


def from_permutations(generators, bound: int = DEFAULT_BOUND, name: str = "",
                      degree: int | None = None) -> FiniteGroup:
    """Enumerate the closure of permutation generators of {0..m-1}.

    Elements are ordered breadth-first from the identity; each new layer is
    sorted lexicographically.  Raises TooLarge past ``bound`` elements.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 1
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise InvalidGroup(f"not a permutation of 0..{degree - 1}: {g}")
    ident = tuple(range(degree))
    elements = [ident]
    seen = {ident}
    layer = [ident]
    while layer:
        new = set()
        for x in layer:
            for s in gens:
                y = tuple(x[s[i]] for i in range(degree))
                if y not in seen:
                    new.add(y)
        layer = sorted(new)
        seen.update(layer)
        elements.extend(layer)
        if len(elements) > bound:
            raise TooLarge(f"group closure exceeds {bound} elements")
    P = np.array(elements, dtype=np.int64).reshape(len(elements), degree)
    weights = degree ** np.arange(degree, dtype=np.int64)[::-1] if degree else np.zeros(0, np.int64)
    codes = P @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]
    n = len(elements)
    mult = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        comp = P[a][P]  # row b: a(b(x))
        mult[a] = order[np.searchsorted(sorted_codes, comp @ weights)]
    return FiniteGroup(n, mult, 0, name)


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass(frozen=True, eq=False)
class ClassData:
    classes: tuple[tuple[int, ...], ...]
    class_sizes: tuple[int, ...]
    representatives: tuple[int, ...]
    squaring_map: tuple[int, ...]
    inverse_map: tuple[int, ...]
    class_of: tuple[int, ...] = field(repr=False)
    element_orders: tuple[int, ...] = field(repr=False)

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    @property
    def class_orders(self) -> tuple[int, ...]:
        return tuple(self.element_orders[r] for r in self.representatives)


def conjugacy_data(G: FiniteGroup) -> ClassData:
    """Conjugacy classes, ordered by (element order, class size, smallest member)."""
    n = G.order
    mult = G.mult
    inv = G.inverse
    label = -np.ones(n, dtype=np.int64)
    raw = []
    for g in range(n):
        if label[g] >= 0:
            continue
        orbit = np.unique(mult[mult[:, g], inv])
        label[orbit] = len(raw)
        raw.append(tuple(int(x) for x in orbit))
    orders = G.element_orders()
    keyed = sorted(raw, key=lambda c: (int(orders[c[0]]), len(c), c[0]))
    class_of = np.empty(n, dtype=np.int64)
    for i, c in enumerate(keyed):
        class_of[list(c)] = i
    sq_elem = class_of[mult[np.arange(n), np.arange(n)]]
    inv_elem = class_of[inv]
    squaring, inversion = [], []
    for i, c in enumerate(keyed):
        s, t = set(sq_elem[list(c)].tolist()), set(inv_elem[list(c)].tolist())
        if len(s) != 1 or len(t) != 1:
            raise InvalidGroup("power maps are not class functions; table is corrupt")
        squaring.append(s.pop())
        inversion.append(t.pop())
    return ClassData(
        classes=tuple(keyed),
        class_sizes=tuple(len(c) for c in keyed),
        representatives=tuple(c[0] for c in keyed),
        squaring_map=tuple(squaring),
        inverse_map=tuple(inversion),
        class_of=tuple(int(x) for x in class_of),
        element_orders=tuple(int(x) for x in orders),
    )


def class_matrix(G: FiniteGroup, D: ClassData, i: int) -> IntMatrix:
    """Class multiplication coefficients for class ``i``.

    Entry (j, k) counts pairs (x, y) with x in class i, y in class k and
    x·y equal to the fixed representative of class j, so every row sums to
    the size of class i.
    """
    if not 0 <= i < D.num_classes:
        raise IndexError(f"class index {i} out of range")
    h = D.num_classes
    inv = G.inverse
    xs = np.array(D.classes[i])
    class_of = np.array(D.class_of)
    rows = []
    for r in D.representatives:
        ys = G.mult[inv[xs], r]
        rows.append(tuple(int(c) for c in np.bincount(class_of[ys], minlength=h)))
    return IntMatrix(h, h, tuple(rows))


# ---------------------------------------------------------------------------
# built-in groups


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InvalidGroup("cyclic group order must be positive")
    gens = [tuple((i + 1) % n for i in range(n))] if n > 1 else []
    return from_permutations(gens, name=f"Z/{n}", degree=n)


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise InvalidGroup("built-in symmetric groups cover S1..S6")
    gens = []
    if n > 1:
        gens.append(tuple([1, 0] + list(range(2, n))))
        gens.append(tuple(list(range(1, n)) + [0]))
    return from_permutations(gens, name=f"S{n}", degree=n)


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n (so n=4 gives D8)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return from_permutations([rot, ref], name=f"D{2 * n}", degree=n)


# unit quaternions ±1, ±i, ±j, ±k as (sign, unit) with unit in 0..3 = 1, i, j, k
_QMUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion_group() -> FiniteGroup:
    """Q8 via its left-regular action on the eight units 1, i, j, k, -1, -i, -j, -k."""
    units = [(1, u) for u in range(4)] + [(-1, u) for u in range(4)]
    index = {x: n for n, x in enumerate(units)}

    def left(a):
        out = []
        for s, u in units:
            t, w = _QMUL[(a, u)]
            out.append(index[(s * t, w)])
        return tuple(out)

    return from_permutations([left(1), left(2)], name="Q8", degree=8)


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FiniteGroup:
    key = name.strip().upper().replace(" ", "")
    if key == "Q8":
        return quaternion_group()
    if key == "D8":
        return dihedral_group(4)
    if key.startswith("D") and key[1:].isdigit() and int(key[1:]) % 2 == 0 and int(key[1:]) >= 6:
        return dihedral_group(int(key[1:]) // 2)
    if key.startswith("S") and key[1:].isdigit():
        return symmetric_group(int(key[1:]))
    for prefix in ("Z/", "C", "Z"):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return cyclic_group(int(key[len(prefix):]))
    raise InvalidGroup(f"unknown built-in group {name!r}; try Q8, D8, Z/n, S3..S6")


BUILTIN_NAMES = ("Q8", "D8", "Z/2", "Z/3", "Z/4", "Z/6", "S3", "S4", "S5", "S6")


def group_from_json(data, bound: int = DEFAULT_BOUND) -> FiniteGroup:
    if not isinstance(data, dict):
        raise FormatError("group file must hold a JSON object")
    name = data.get("name", "")
    if "permutations" in data:
        return from_permutations(data["permutations"], bound=bound, name=name,
                                 degree=data.get("degree"))
    if "table" in data:
        if len(data["table"]) > bound:
            raise TooLarge(f"group order exceeds {bound}")
        return from_table(data["table"], name=name)
    raise FormatError('group file needs a "permutations" or "table" key')


def load_group(path, bound: int = DEFAULT_BOUND) -> FiniteGroup:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc
    G = group_from_json(data, bound=bound)
    if not G.name:
        object.__setattr__(G, "name", Path(path).stem)
    return G


def group_to_json(G: FiniteGroup) -> dict:
    return {"name": G.name, "table": G.mult.tolist()}
