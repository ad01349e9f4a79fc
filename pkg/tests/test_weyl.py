from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from realcstar.errors import ZeroParameter
from realcstar.realrep import RealAlgebra
from realcstar.multiplicity import OMEGA
from realcstar.weyl import (
    WEYL_DENSITY,
    LaurentChar,
    fs_su2,
    fs_weil_h,
    fs_weil_h_onedim,
    haar_su2,
    ko_su2_group_algebra,
    ko_weil_h_group_algebra,
    su2_character,
    weil_h_group_algebra,
    weil_h_report,
)

HALF = Fraction(1, 2)


def numeric_fs_su2(k, samples=4000):
    """Weyl integration by quadrature: (2/π)∫₀^π χ_k(2θ) sin²θ dθ."""
    theta = (np.arange(samples) + 0.5) * np.pi / samples
    two_k = int(2 * k)
    chi = sum(np.cos(2 * theta * e) for e in range(-two_k, two_k + 1, 2))
    return float(2 / np.pi * np.sum(chi * np.sin(theta) ** 2) * np.pi / samples)


def weil_rep(n):
    """Explicit 2×2 model of π_n: z ↦ diag(zⁿ, z⁻ⁿ), j ↦ [[0, (-1)ⁿ], [1, 0]]."""
    J = np.array([[0, (-1) ** n], [1, 0]], dtype=complex)

    def rho_t(z):
        return np.diag([z ** n, z ** (-n)])

    return rho_t, J


def numeric_fs_weil(n, samples=720):
    rho_t, J = weil_rep(n)
    zs = np.exp(2j * np.pi * np.arange(samples) / samples)
    # j² = -1 and j z j⁻¹ = z̄ must hold in the model
    assert np.allclose(J @ J, rho_t(-1))
    for z in zs[:5]:
        assert np.allclose(J @ rho_t(z) @ np.linalg.inv(J), rho_t(np.conj(z)))
    on_torus = np.mean([np.trace(rho_t(z) @ rho_t(z)) for z in zs])
    off_torus = np.mean([np.trace((J @ rho_t(z)) @ (J @ rho_t(z))) for z in zs])
    return float(np.real(on_torus + off_torus) / 2)


def test_characters():
    assert su2_character(0) == LaurentChar.of({0: 1})
    assert su2_character(HALF) == LaurentChar.of({1: 1, -1: 1})
    assert su2_character(1) == LaurentChar.of({2: 1, 0: 1, -2: 1})
    assert su2_character("3/2").dimension() == 4
    with pytest.raises(ValueError):
        su2_character(Fraction(1, 3))


def test_fs_su2_examples():
    assert fs_su2(1) == 1
    assert fs_su2(HALF) == -1
    assert fs_su2(0) == 1


@pytest.mark.parametrize("two_k", range(0, 41))
def test_fs_su2_exhaustive_and_against_quadrature(two_k):
    k = Fraction(two_k, 2)
    nu = fs_su2(k)
    assert nu == (1 if two_k % 2 == 0 else -1)
    assert abs(numeric_fs_su2(k) - nu) < 1e-9
    chi = su2_character(k)
    assert chi.is_palindromic()
    assert haar_su2(chi * chi) == 1


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_laurent_algebra(a, b, c):
    x, y, z = (su2_character(Fraction(t, 2)) for t in (a, b, c))
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert (x + y).constant_term() == x.constant_term() + y.constant_term()
    # Clebsch-Gordan multiplicity of the trivial rep in V_a ⊗ V_b
    assert haar_su2(x * y) == (1 if a == b else 0)


def test_weyl_density_normalization():
    assert haar_su2(LaurentChar.of({0: 1})) == 1
    assert WEYL_DENSITY.is_palindromic()


def test_fs_weil_examples():
    assert fs_weil_h_onedim(1) == 1 and fs_weil_h_onedim(-1) == 1
    assert fs_weil_h(1) == -1
    assert fs_weil_h(2) == 1
    with pytest.raises(ZeroParameter):
        fs_weil_h(0)


@pytest.mark.parametrize("n", range(1, 11))
def test_fs_weil_parity_and_model(n):
    assert fs_weil_h(n) == (-1) ** n
    assert abs(numeric_fs_weil(n) - (-1) ** n) < 1e-9
    assert fs_weil_h(-n) == fs_weil_h(n)


def test_weil_report_flags_even():
    r2, r3 = weil_h_report(2), weil_h_report(3)
    assert r2["discrepancy"] and "note" in r2 and r2["type"] == "real"
    assert not r3["discrepancy"] and r3["type"] == "quaternionic"


def test_ko_su2():
    G = ko_su2_group_algebra()
    assert G.describe(1) == "ω·ℤ/2"
    assert G.describe(3) == "0"
    assert G.describe(0) == "ω·ℤ"


def test_weil_h_algebra_and_ko():
    assert weil_h_group_algebra() == RealAlgebra.of(("R", 1, 2), ("R", 2, OMEGA), ("H", 1, OMEGA))
    assert ko_weil_h_group_algebra() == ko_su2_group_algebra()
