"""Graded abelian groups for KO, KU, KSp and KSC-type theories.

A ``GradedGroup`` assigns to each degree mod the period a countable direct
sum of cyclic groups.  Each degree is stored canonically as multiplicities
of ℤ and of the primary cyclic groups ℤ/p^k, with multiplicity ω for a
countably infinite sum; that data determines the group up to isomorphism,
so equality of values is isomorphism.

Degree conventions: ``shift(G, s)`` has ``G[n - s]`` in degree n, so the
theory written KO_{•+1} is ``shift(KO, -1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from realcstar.errors import FormatError, InfiniteUnsupported, PeriodMismatch, TorsionUnsupported
from realcstar.intlinalg import FgAbGroup, IntMatrix, cokernel, smith_normal_form
from realcstar.multiplicity import (
    OMEGA,
    add_mult,
    check_mult,
    mul_mult,
    mult_from_json,
    mult_to_json,
)

FREE = 0  # cyclic order key for ℤ

# Bott periodicity at a point: literature input, degrees 0..7
KO_POINT = (FgAbGroup(1), FgAbGroup(0, (2,)), FgAbGroup(0, (2,)), FgAbGroup(),
            FgAbGroup(1), FgAbGroup(), FgAbGroup(), FgAbGroup())
KU_POINT = (FgAbGroup(1), FgAbGroup())


def _cyclics(G: FgAbGroup) -> list[int]:
    return [FREE] * G.free_rank + G.primary_cyclics()


def _canonical(items: Iterable[tuple[int, object]]) -> tuple[tuple[int, object], ...]:
    acc: dict[int, object] = {}
    for q, m in items:
        check_mult(m)
        if m == 0:
            continue
        acc[q] = add_mult(acc.get(q, 0), m)
    return tuple(sorted(acc.items()))


def _cyclic_str(q: int) -> str:
    return "ℤ" if q == FREE else f"ℤ/{q}"


@dataclass(frozen=True)
class GradedGroup:
    period: int
    degrees: tuple[tuple[tuple[int, object], ...], ...]

    def __post_init__(self):
        if self.period < 1 or len(self.degrees) != self.period:
            raise ValueError(f"need exactly {self.period} degrees, got {len(self.degrees)}")
        object.__setattr__(self, "degrees", tuple(_canonical(d) for d in self.degrees))

    # -- construction ------------------------------------------------------

    @classmethod
    def from_groups(cls, groups: Sequence, period: int | None = None) -> GradedGroup:
        """One entry per degree: an FgAbGroup or a list of (FgAbGroup, multiplicity)."""
        degs = []
        for entry in groups:
            pairs = [(entry, 1)] if isinstance(entry, FgAbGroup) else entry
            degs.append([(q, m) for G, m in pairs for q in _cyclics(G)])
        G = cls(len(degs), tuple(degs))
        return G.promote(period) if period else G

    @classmethod
    def zero(cls, period: int = 8) -> GradedGroup:
        return cls(period, ((),) * period)

    # -- access ------------------------------------------------------------

    def __getitem__(self, n: int):
        return self.degrees[n % self.period]

    def multiplicity(self, n: int, q: int):
        return dict(self[n]).get(q, 0)

    def rank(self, n: int):
        return self.multiplicity(n, FREE)

    def torsion_rank(self, n: int, p: int = 2):
        """Number of cyclic summands whose order is divisible by the prime p."""
        out = 0
        for q, m in self[n]:
            if q != FREE and q % p == 0:
                out = add_mult(out, m)
        return out

    def group(self, n: int) -> FgAbGroup:
        free, orders = 0, []
        for q, m in self[n]:
            if m is OMEGA:
                raise InfiniteUnsupported(f"degree {n} is an infinite direct sum")
            if q == FREE:
                free += m
            else:
                orders += [q] * m
        return FgAbGroup.from_orders(free, orders)

    def is_finite(self) -> bool:
        return all(m is not OMEGA for d in self.degrees for _, m in d)

    def is_free(self) -> bool:
        return all(q == FREE for d in self.degrees for q, _ in d)

    def rank_sequence(self) -> tuple:
        return tuple(self.rank(n) for n in range(self.period))

    def torsion_sequence(self, p: int = 2) -> tuple:
        return tuple(self.torsion_rank(n, p) for n in range(self.period))

    def describe(self, n: int) -> str:
        parts = []
        for q, m in self[n]:
            if m is OMEGA:
                parts.append(f"ω·{_cyclic_str(q)}")
            elif m == 1:
                parts.append(_cyclic_str(q))
            elif q == FREE:
                parts.append(str(FgAbGroup(m)))
            else:
                parts.append(f"({_cyclic_str(q)}){str(FgAbGroup(m))[1:]}")
        return " ⊕ ".join(parts) if parts else "0"

    def __str__(self):
        return "(" + ", ".join(self.describe(n) for n in range(self.period)) + ")"

    # -- periods -------------------------------------------------------------

    def promote(self, period: int) -> GradedGroup:
        if period % self.period:
            raise PeriodMismatch(f"cannot view period {self.period} as period {period}")
        return GradedGroup(period, tuple(self[n] for n in range(period)))

    def minimal_period(self) -> int:
        for p in range(1, self.period + 1):
            if self.period % p == 0 and all(self[n] == self[n + p] for n in range(self.period)):
                return p
        return self.period

    def reduced(self) -> GradedGroup:
        p = self.minimal_period()
        return GradedGroup(p, self.degrees[:p])

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        out = {}
        for n in range(self.period):
            out[str(n)] = [[1, [], mult_to_json(m)] if q == FREE else [0, [q], mult_to_json(m)]
                           for q, m in self[n]]
        return out

    @classmethod
    def from_json(cls, data) -> GradedGroup:
        try:
            keys = sorted(int(k) for k in data)
            if keys != list(range(len(keys))) or not keys:
                raise FormatError("degree keys must be 0..period-1")
            degs = []
            for n in keys:
                pairs = []
                for rank, factors, m in data[str(n)]:
                    pairs.append((FgAbGroup.from_orders(int(rank), [int(d) for d in factors]),
                                  mult_from_json(m)))
                degs.append(pairs)
        except (TypeError, ValueError, KeyError) as exc:
            raise FormatError(f"malformed graded group: {exc}") from exc
        return cls.from_groups(degs)


# ---------------------------------------------------------------------------
# point theories


def ko_point() -> GradedGroup:
    return GradedGroup.from_groups(KO_POINT)


def ku_point(period: int = 8) -> GradedGroup:
    return GradedGroup.from_groups(KU_POINT, period=period)


def ksp_point() -> GradedGroup:
    return shift(ko_point(), 4)


# ---------------------------------------------------------------------------
# calculus


def shift(G: GradedGroup, s: int) -> GradedGroup:
    """Degree n of the result is degree n - s of G."""
    return GradedGroup(G.period, tuple(G[n - s] for n in range(G.period)))


def scale(G: GradedGroup, m) -> GradedGroup:
    """m copies of G (m may be OMEGA)."""
    return GradedGroup(G.period, tuple(tuple((q, mul_mult(m, k)) for q, k in d) for d in G.degrees))


def direct_sum(groups: Sequence[GradedGroup]) -> GradedGroup:
    groups = list(groups)
    if not groups:
        raise ValueError("direct sum of no graded groups")
    period = groups[0].period
    if any(g.period != period for g in groups):
        raise PeriodMismatch(f"periods differ: {[g.period for g in groups]}")
    return GradedGroup(period, tuple(tuple(x for g in groups for x in g[n]) for n in range(period)))


def equal_up_to_shift(G1: GradedGroup, G2: GradedGroup) -> set[int]:
    """All s with G1[n] ≅ G2[n + s] for every n."""
    if G1.period != G2.period:
        raise PeriodMismatch(f"periods differ: {G1.period} vs {G2.period}")
    p = G1.period
    return {s for s in range(p) if all(G1[n] == G2[n + s] for n in range(p))}


@dataclass(frozen=True)
class GradedAction:
    """Automorphism A_n of ℤ^{r_n} in each degree n."""

    matrices: tuple[IntMatrix, ...]

    def __post_init__(self):
        for n, A in enumerate(self.matrices):
            if A.rows != A.cols:
                raise ValueError(f"degree {n}: action matrix must be square")
            d = smith_normal_form(A)
            if len(d) != A.rows or any(x != 1 for x in d):
                raise ValueError(f"degree {n}: action is not invertible over ℤ")

    @property
    def period(self) -> int:
        return len(self.matrices)

    def ranks(self) -> tuple[int, ...]:
        return tuple(A.rows for A in self.matrices)

    def __getitem__(self, n: int) -> IntMatrix:
        return self.matrices[n % self.period]

    @classmethod
    def identity(cls, ranks: Sequence[int]) -> GradedAction:
        return cls(tuple(IntMatrix.identity(r) for r in ranks))


def mapping_torus_k(B: GradedGroup, phi: GradedAction) -> GradedGroup:
    """K-theory of the mapping torus of an automorphism acting on free K-groups.

    Degree n is coker(1 - A_{n+1}) ⊕ ker(1 - A_n); the extension splits
    because the kernel term is free.
    """
    if not B.is_free() or not B.is_finite():
        raise TorsionUnsupported("mapping torus sequence needs finitely generated free groups")
    if phi.period != B.period or phi.ranks() != B.rank_sequence():
        raise ValueError(f"action ranks {phi.ranks()} do not match {B.rank_sequence()}")
    degs = []
    for n in range(B.period):
        A_next = phi[n + 1]
        co = cokernel(IntMatrix.identity(A_next.rows) - A_next)
        A = phi[n]
        ker_rank = A.rows - len(smith_normal_form(IntMatrix.identity(A.rows) - A))
        degs.append(co + FgAbGroup(ker_rank))
    return GradedGroup.from_groups(degs)


def ku_conjugation() -> GradedAction:
    """Complex conjugation on KU, acting by (-1)^k in degree 2k (period 8)."""
    mats = []
    for n in range(8):
        mats.append(IntMatrix.from_rows([[(-1) ** (n // 2)]]) if n % 2 == 0 else IntMatrix.zeros(0, 0))
    return GradedAction(tuple(mats))


def ksc_point() -> GradedGroup:
    """KSC of a point, derived from the mapping torus of conjugation on KU."""
    return mapping_torus_k(ku_point(), ku_conjugation())


def ko_torus2() -> GradedGroup:
    """KO of the 2-torus via its stable splitting: KO ⊕ 2·shift(KO,1) ⊕ shift(KO,2)."""
    ko = ko_point()
    return direct_sum([ko, scale(shift(ko, 1), 2), shift(ko, 2)])


def named_theory(name: str) -> GradedGroup:
    key = name.lower()
    table = {"ko": ko_point, "ku": ku_point, "ksp": ksp_point, "ksc": ksc_point, "ko-t2": ko_torus2}
    if key not in table:
        raise FormatError(f"unknown theory {name!r}; choose from {sorted(table)}")
    return table[key]()
