"""Elliptic-curve orientifold theories, their twisted KR groups, and duality classes.

Also the continuous-trace picture of the reduced real C*-algebra of
SL(2,ℂ) and the degree-shift comparison with KO of the SU(2) group algebra.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from realcstar.errors import FormatError, MismatchReport, PartitionViolation
from realcstar.kcalc import (
    GradedGroup,
    direct_sum,
    equal_up_to_shift,
    ko_point,
    ko_torus2,
    ksc_point,
    ku_point,
    scale,
    shift,
)
from realcstar.multiplicity import OMEGA, check_mult, mult_from_json, mult_prefix, mult_to_json
from realcstar.weyl import fs_su2, ko_su2_group_algebra

UNSPECIFIED = "unspecified"


class InvolutionKind(enum.Enum):
    IDENTITY = "identity"
    HOLOMORPHIC_FREE = "holomorphic_free"
    ANTIHOLOMORPHIC_FREE = "antiholomorphic_free"
    HOLOMORPHIC_FIXED4 = "holomorphic_fixed4"
    ANTIHOLOMORPHIC_FIXED = "antiholomorphic_fixed"


@dataclass(frozen=True)
class OrientifoldTheory:
    name: str
    involution_kind: InvolutionKind
    sign_choice: tuple[str, ...]
    b_field_nontrivial: bool
    kr: GradedGroup
    class_id: str
    degree_shift: object = UNSPECIFIED  # absolute shift within the class is not known

    def __post_init__(self):
        if any(s not in "+-" or len(s) != 1 for s in self.sign_choice):
            raise ValueError(f"sign choice must use '+' and '-', got {self.sign_choice}")
        if self.kr.period != 8:
            raise ValueError("KR groups are stored with period 8")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "involution_kind": self.involution_kind.value,
            "sign_choice": list(self.sign_choice),
            "b_field_nontrivial": self.b_field_nontrivial,
            "class_id": self.class_id,
            "degree_shift": self.degree_shift,
            "kr": self.kr.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> OrientifoldTheory:
        try:
            return cls(
                name=str(data["name"]),
                involution_kind=InvolutionKind(data["involution_kind"]),
                sign_choice=tuple(data["sign_choice"]),
                b_field_nontrivial=bool(data["b_field_nontrivial"]),
                kr=GradedGroup.from_json(data["kr"]),
                class_id=str(data["class_id"]),
                degree_shift=data.get("degree_shift", UNSPECIFIED),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"malformed theory record: {exc}") from exc


# ---------------------------------------------------------------------------
# class representatives


def kr_class_a() -> GradedGroup:
    return ko_torus2()


def kr_class_b() -> GradedGroup:
    ksc = ksc_point().promote(8)
    return direct_sum([ksc, shift(ksc, -1)])


def kr_class_c() -> GradedGroup:
    ko = ko_point()
    return direct_sum([ko, ko, shift(ku_point(), -1)])


CLASS_KR = {"A": kr_class_a, "B": kr_class_b, "C": kr_class_c}

_LISTING = [
    ("A", "identity", InvolutionKind.IDENTITY, (), False),
    ("A", "antiholomorphic, two fixed circles", InvolutionKind.ANTIHOLOMORPHIC_FIXED, ("+", "+"), False),
    ("A", "holomorphic, four fixed points", InvolutionKind.HOLOMORPHIC_FIXED4, (), False),
    ("B", "holomorphic free", InvolutionKind.HOLOMORPHIC_FREE, (), False),
    ("B", "antiholomorphic free", InvolutionKind.ANTIHOLOMORPHIC_FREE, (), False),
    ("B", "holomorphic, four fixed points (+,+,-,-)", InvolutionKind.HOLOMORPHIC_FIXED4,
     ("+", "+", "-", "-"), False),
    ("B", "antiholomorphic, two fixed circles (+,-)", InvolutionKind.ANTIHOLOMORPHIC_FIXED, ("+", "-"), False),
    ("C", "identity with nontrivial B-field", InvolutionKind.IDENTITY, (), True),
    ("C", "holomorphic, four fixed points (+,+,+,-)", InvolutionKind.HOLOMORPHIC_FIXED4,
     ("+", "+", "+", "-"), False),
    ("C", "antiholomorphic, fixed circle", InvolutionKind.ANTIHOLOMORPHIC_FIXED, (), False),
]


def build_catalog() -> list[OrientifoldTheory]:
    reps = {cid: make() for cid, make in CLASS_KR.items()}
    return [OrientifoldTheory(name, kind, signs, bfield, reps[cid], cid)
            for cid, name, kind, signs, bfield in _LISTING]


def catalog_to_json(catalog) -> list[dict]:
    return [t.to_json() for t in catalog]


def catalog_from_json(data) -> list[OrientifoldTheory]:
    if not isinstance(data, list):
        raise FormatError("catalog must be a list of theory records")
    return [OrientifoldTheory.from_json(d) for d in data]


def _rotations(seq) -> set[tuple]:
    return {tuple(seq[i:]) + tuple(seq[:i]) for i in range(len(seq))}


def verify_duality_partition(catalog) -> dict:
    """Check shift-equivalence inside classes and inequivalence across them."""
    classes: dict[str, list[OrientifoldTheory]] = {}
    for t in catalog:
        classes.setdefault(t.class_id, []).append(t)
    intra = []
    for cid, members in sorted(classes.items()):
        for a, b in combinations(members, 2):
            shifts = equal_up_to_shift(a.kr, b.kr)
            if not shifts:
                raise PartitionViolation(f"class {cid}: {a.name!r} and {b.name!r} are not shift-equivalent")
            intra.append({"class": cid, "pair": [a.name, b.name], "shifts": sorted(shifts)})
    inter = []
    for (c1, m1), (c2, m2) in combinations(sorted(classes.items()), 2):
        for a in m1:
            for b in m2:
                shifts = equal_up_to_shift(a.kr, b.kr)
                if shifts:
                    raise PartitionViolation(
                        f"{a.name!r} (class {c1}) matches {b.name!r} (class {c2}) under shifts {sorted(shifts)}")
        r1, r2 = m1[0].kr.rank_sequence(), m2[0].kr.rank_sequence()
        t1, t2 = m1[0].kr.torsion_sequence(2), m2[0].kr.torsion_sequence(2)
        if r2 not in _rotations(r1):
            reason = "rank sequences are not rotations of each other"
        elif t2 not in _rotations(t1):
            reason = "rank sequences align, but 2-torsion ranks differ at every alignment"
        else:
            reason = "degreewise groups differ at every alignment"
        inter.append({"classes": [c1, c2], "shifts": [], "distinguisher": reason,
                      "separated_by_torsion": t2 not in _rotations(t1)})
    invariants = {cid: {"rank_sequence": list(m[0].kr.rank_sequence()),
                        "torsion2_sequence": [mult_to_json(x) for x in m[0].kr.torsion_sequence(2)],
                        "kr": str(m[0].kr)}
                  for cid, m in sorted(classes.items())}
    return {
        "classes": {cid: [t.name for t in m] for cid, m in sorted(classes.items())},
        "sizes": [len(m) for _, m in sorted(classes.items())],
        "intra_class": intra,
        "inter_class": inter,
        "invariants": invariants,
        "ok": True,
    }


# ---------------------------------------------------------------------------
# SL(2,ℂ): continuous-trace summands and the degree-shift check


@dataclass(frozen=True)
class CTSummand:
    base: str  # "half-line" or "line"
    ring: str  # "R" or "H"
    multiplicity: object = 1

    def __post_init__(self):
        if self.base not in ("half-line", "line") or self.ring not in ("R", "H"):
            raise ValueError(f"unsupported summand {self.base}/{self.ring}")
        check_mult(self.multiplicity)

    def __str__(self):
        return f"{mult_prefix(self.multiplicity)}C0^{self.ring}({self.base})"

    def to_json(self):
        return [self.base, self.ring, mult_to_json(self.multiplicity)]

    @classmethod
    def from_json(cls, data) -> CTSummand:
        base, ring, m = data
        return cls(base, ring, mult_from_json(m))


def principal_series_ring(n: int) -> str:
    """Commutant of the parameter-n principal series, read off its lowest K-type (spin n/2)."""
    return "R" if fs_su2(Fraction(n, 2)) == 1 else "H"


def sl2c_reduced_algebra(window: int = 40) -> list[CTSummand]:
    """Half-line summand for n = 0 plus ω line summands for each ring seen at n > 0."""
    out = [CTSummand("half-line", principal_series_ring(0), 1)]
    rings = {principal_series_ring(n) for n in range(1, window + 1)}
    for ring in ("R", "H"):
        if ring in rings:
            out.append(CTSummand("line", ring, OMEGA))
    return out


# KO of C0(line) with real or quaternionic coefficients: KO_{n+1} and KO_{n+5}
_LINE_SHIFT = {"R": -1, "H": -5}


def ko_of_ct_summands(summands) -> GradedGroup:
    parts = [GradedGroup.zero(8)]
    for s in summands:
        if s.base == "half-line":
            continue  # properly contractible, no K-theory
        parts.append(scale(shift(ko_point(), _LINE_SHIFT[s.ring]), s.multiplicity))
    return direct_sum(parts)


def baum_connes_shift_check() -> dict:
    left = shift(ko_su2_group_algebra(), 3)
    right = ko_of_ct_summands(sl2c_reduced_algebra())
    for n in range(8):
        if left[n] != right[n]:
            raise MismatchReport(n, left.describe(n), right.describe(n))
    return {
        "equal": True,
        "degrees": [{"degree": n, "left": left.describe(n), "right": right.describe(n)} for n in range(8)],
        "torsion_free_degrees": [n for n in range(8) if right.rank(n) != 0],
        "matching": [
            {"left": "integral spin (real type), KO shifted by 3",
             "right": "odd-parameter line summands with H coefficients"},
            {"left": "half-integral spin (quaternionic type), KSp shifted by 3",
             "right": "even-parameter line summands with R coefficients"},
        ],
    }
