"""Frobenius-Schur indicators for SU(2) and for H = 𝕋 ∪ j𝕋 by exact integration.

Class functions on the maximal torus are Laurent polynomials in z.  Haar
integrals become constant terms: the SU(2) Weyl integration formula
weights by (2 - z² - z⁻²)/2, and on H each of the two components gets
weight one half.  On the non-identity component (jz)² = -1 for every z,
so that half of the integral collapses to a single character value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from realcstar.errors import ZeroParameter
from realcstar.kcalc import GradedGroup, direct_sum, ko_point, ksp_point, ku_point, scale
from realcstar.multiplicity import OMEGA
from realcstar.realrep import IrrepType, RealAlgebra

# spins checked when building KO from the computed types
TYPE_WINDOW = 40


@dataclass(frozen=True)
class LaurentChar:
    """Integer Laurent polynomial Σ c_e z^e, stored as sorted (e, c) pairs."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        acc: dict[int, int] = {}
        for e, c in self.terms:
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        object.__setattr__(self, "terms", tuple(sorted((e, c) for e, c in acc.items() if c)))

    @classmethod
    def of(cls, coeffs: dict[int, int]) -> LaurentChar:
        return cls(tuple(coeffs.items()))

    def coefficient(self, e: int) -> int:
        return dict(self.terms).get(e, 0)

    def constant_term(self) -> int:
        return self.coefficient(0)

    def is_palindromic(self) -> bool:
        return all(self.coefficient(-e) == c for e, c in self.terms)

    def __add__(self, other: LaurentChar) -> LaurentChar:
        return LaurentChar(self.terms + other.terms)

    def __mul__(self, other: LaurentChar) -> LaurentChar:
        return LaurentChar(tuple((e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms))

    def scale(self, k: int) -> LaurentChar:
        return LaurentChar(tuple((e, k * c) for e, c in self.terms))

    def substitute_power(self, k: int) -> LaurentChar:
        """z ↦ z^k."""
        return LaurentChar(tuple((k * e, c) for e, c in self.terms))

    def at_minus_one(self) -> int:
        return sum(c * (-1) ** (e % 2) for e, c in self.terms)

    def dimension(self) -> int:
        return sum(c for _, c in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms, key=lambda t: -t[0]):
            mono = "" if e == 0 else ("z" if e == 1 else f"z^{e}")
            coef = str(c) if (c != 1 or e == 0) else ""
            if c == -1 and e != 0:
                coef = "-"
            parts.append(coef + mono)
        return " + ".join(parts).replace("+ -", "- ")


WEYL_DENSITY = LaurentChar.of({0: 2, 2: -1, -2: -1})  # twice the SU(2) Weyl density


def spin(k) -> Fraction:
    """Normalize a spin given as int, float, Fraction or text like "3/2"."""
    f = Fraction(k) if not isinstance(k, float) else Fraction(k).limit_denominator(2)
    if f < 0 or (2 * f).denominator != 1:
        raise ValueError(f"spin must be a non-negative half-integer, got {k}")
    return f


def su2_character(k) -> LaurentChar:
    """Character of the (2k+1)-dimensional irrep on diag(z, z⁻¹)."""
    two_k = int(2 * spin(k))
    return LaurentChar(tuple((e, 1) for e in range(-two_k, two_k + 1, 2)))


def haar_su2(f: LaurentChar) -> Fraction:
    """Integral over SU(2) of a class function given by its restriction to the torus."""
    return Fraction((f * WEYL_DENSITY).constant_term(), 2)


def fs_su2(k) -> int:
    nu = haar_su2(su2_character(k).substitute_power(2))
    assert nu.denominator == 1
    return int(nu)


def irrep_type(nu: int) -> IrrepType:
    return IrrepType.from_indicator(nu)


# ---------------------------------------------------------------------------
# H = 𝕋 ∪ j𝕋 with j² = -1 and j z j⁻¹ = z̄


def _fs_weil(torus_char: LaurentChar) -> Fraction:
    # identity component: plain Haar on 𝕋; other component: (jz)² = -1 throughout
    return Fraction(torus_char.substitute_power(2).constant_term(), 2) + Fraction(torus_char.at_minus_one(), 2)


def weil_h_character(n: int) -> LaurentChar:
    """Torus restriction of π_n (z ↦ diag(zⁿ, z⁻ⁿ)); π_n vanishes off the torus."""
    if n == 0:
        raise ZeroParameter("π_0 is reducible; use the one-dimensional characters")
    return LaurentChar.of({n: 1, -n: 1})


def fs_weil_h(n: int) -> int:
    nu = _fs_weil(weil_h_character(n))
    assert nu.denominator == 1
    return int(nu)


def fs_weil_h_onedim(sign: int) -> int:
    """The characters trivial on 𝕋 with j ↦ ±1."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    nu = _fs_weil(LaurentChar.of({0: 1}))
    return int(nu)


def weil_h_report(n: int) -> dict:
    """Indicator of π_n with a flag when it is not of quaternionic type."""
    nu = fs_weil_h(n)
    out = {"n": n, "indicator": nu, "type": irrep_type(nu).value, "discrepancy": nu != -1}
    if nu != -1:
        out["note"] = ("even n gives real type: a model with ρ(j)² = -1 would force "
                       "ρ(-1) = -1, but π_n(-1) = (-1)^n = +1, so the family is not "
                       "uniformly quaternionic")
    return out


# ---------------------------------------------------------------------------
# KO of the group algebras


def _ko_from_types(types) -> GradedGroup:
    """ω copies of KO, KU or KSp for each real, complex or quaternionic family present.

    A family is present if it occurs in the window; indicators here depend only
    on parity, so anything seen once recurs infinitely often.
    """
    parts = [GradedGroup.zero(8)]
    if IrrepType.REAL in types:
        parts.append(scale(ko_point(), OMEGA))
    if IrrepType.COMPLEX in types:
        parts.append(scale(ku_point(), OMEGA))
    if IrrepType.QUATERNIONIC in types:
        parts.append(scale(ksp_point(), OMEGA))
    return direct_sum(parts)


def su2_types(window: int = TYPE_WINDOW) -> list[IrrepType]:
    return [irrep_type(fs_su2(Fraction(j, 2))) for j in range(window + 1)]


def ko_su2_group_algebra() -> GradedGroup:
    return _ko_from_types(set(su2_types()))


def weil_h_types(window: int = TYPE_WINDOW) -> list[IrrepType]:
    ones = [irrep_type(fs_weil_h_onedim(s)) for s in (1, -1)]
    return ones + [irrep_type(fs_weil_h(n)) for n in range(1, window + 1)]


def weil_h_group_algebra() -> RealAlgebra:
    """Real group algebra summary: two copies of ℝ, then M2(R) (even n) and H (odd n)."""
    pieces = []
    for s in (1, -1):
        if irrep_type(fs_weil_h_onedim(s)) is IrrepType.REAL:
            pieces.append(("R", 1, 1))
    seen = {irrep_type(fs_weil_h(n)) for n in range(1, TYPE_WINDOW + 1)}
    if IrrepType.REAL in seen:
        pieces.append(("R", 2, OMEGA))
    if IrrepType.QUATERNIONIC in seen:
        pieces.append(("H", 1, OMEGA))
    return RealAlgebra.of(*pieces)


def ko_weil_h_group_algebra() -> GradedGroup:
    return _ko_from_types(set(weil_h_types()))
