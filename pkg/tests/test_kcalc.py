import pytest
from hypothesis import given, strategies as st

from realcstar.errors import FormatError, PeriodMismatch, TorsionUnsupported
from realcstar.intlinalg import FgAbGroup, IntMatrix
from realcstar.kcalc import (
    GradedAction,
    GradedGroup,
    direct_sum,
    equal_up_to_shift,
    ko_point,
    ko_torus2,
    ksc_point,
    ksp_point,
    ku_conjugation,
    ku_point,
    mapping_torus_k,
    scale,
    shift,
)
from realcstar.multiplicity import OMEGA

Z, Z2, ZERO = FgAbGroup(1), FgAbGroup(0, (2,)), FgAbGroup()


def test_point_theories():
    assert [ko_point().group(n) for n in range(8)] == [Z, Z2, Z2, ZERO, Z, ZERO, ZERO, ZERO]
    assert ko_point().group(1) == Z2
    assert ksp_point().group(4) == Z
    assert ku_point().group(3) == ZERO
    assert ku_point().period == 8 and ku_point().minimal_period() == 2


def test_shift_examples():
    ko = ko_point()
    assert shift(ko, 0) == ko
    assert shift(ko, 4) == ksp_point()
    assert shift(ko, 8) == ko
    # quaternionic coefficients on the line: KO_{n+5}
    H_line = shift(ko, -5)
    assert H_line.group(0) == ko.group(5) and H_line.group(3) == ko.group(0)
    assert shift(ko, -5) == shift(ko, 3)


@given(st.integers(-20, 20), st.integers(-20, 20))
def test_shift_composes(a, b):
    ko = ko_point()
    assert shift(shift(ko, a), b) == shift(ko, a + b)


def test_direct_sum_examples():
    ko = ko_point()
    assert direct_sum([ko, GradedGroup.zero(8)]) == ko
    assert direct_sum([scale(ko, OMEGA), ko]) == scale(ko, OMEGA)
    assert direct_sum([ko, shift(ko, 4)]).group(1) == Z2
    with pytest.raises(PeriodMismatch):
        direct_sum([ko, GradedGroup.from_groups([Z, ZERO])])


def test_mapping_torus_ksc():
    ksc = ksc_point()
    assert ksc.minimal_period() == 4
    assert [ksc.group(n) for n in range(4)] == [Z, Z2, ZERO, Z]
    assert shift(ksc, 4) == ksc


def test_mapping_torus_identity_is_circle_product():
    ku = ku_point()
    got = mapping_torus_k(ku, GradedAction.identity(ku.rank_sequence()))
    assert got == direct_sum([ku, shift(ku, -1)])
    for n in range(8):
        assert got.rank(n) + got.rank(n + 1) == 2 * (ku.rank(n) + ku.rank(n + 1))


def test_mapping_torus_minus_identity():
    B = GradedGroup.from_groups([Z] + [ZERO] * 7)
    mats = [IntMatrix.from_rows([[-1]])] + [IntMatrix.zeros(0, 0)] * 7
    got = mapping_torus_k(B, GradedAction(tuple(mats)))
    # degree n-1 receives coker of degree n
    assert got.group(7) == Z2
    assert got.group(0) == ZERO


def test_mapping_torus_rejects_torsion():
    with pytest.raises(TorsionUnsupported):
        mapping_torus_k(ko_point(), GradedAction.identity([1, 0, 0, 0, 1, 0, 0, 0]))


def test_action_must_be_invertible():
    with pytest.raises(ValueError):
        GradedAction((IntMatrix.from_rows([[2]]),))
    GradedAction((IntMatrix.from_rows([[2, 1], [1, 1]]),))


def test_ko_torus2():
    T = ko_torus2()
    assert T.group(0) == Z
    assert T.rank_sequence() == (1, 2, 1, 0, 1, 2, 1, 0)
    assert T.group(2) == FgAbGroup(1, (2, 2, 2))
    assert T.torsion_rank(2) == 3


def test_ko_torus2_rank_oracle():
    b = (1, 0, 0, 0, 1, 0, 0, 0)
    assert ko_torus2().rank_sequence() == tuple(b[n] + 2 * b[n - 1] + b[n - 2] for n in range(8))


def test_equal_up_to_shift_examples():
    ko, ksp, ku = ko_point(), ksp_point(), ku_point()
    assert equal_up_to_shift(ko, ksp) == {4}
    assert equal_up_to_shift(ko, ko) == {0}
    assert equal_up_to_shift(ko, ku) == set()
    assert equal_up_to_shift(ku, ku) == {0, 2, 4, 6}


@given(st.integers(0, 7))
def test_equal_up_to_shift_symmetry(s):
    ko = ko_point()
    G = shift(ko, s)
    fwd = equal_up_to_shift(ko, G)
    back = equal_up_to_shift(G, ko)
    assert {(-x) % 8 for x in fwd} == back
    # G1[n] = G2[n+s] with G2 = shift(G1, s)
    assert s in fwd


def test_json_roundtrip():
    G = direct_sum([scale(ko_point(), OMEGA), ko_torus2()])
    assert GradedGroup.from_json(G.to_json()) == G
    assert ko_point().to_json()["1"] == [[0, [2], 1]]
    with pytest.raises(FormatError):
        GradedGroup.from_json({"0": [], "2": []})


def test_torsion_and_describe():
    G = direct_sum([scale(ko_point(), OMEGA), scale(ksp_point(), OMEGA)])
    assert G.torsion_rank(1) is OMEGA and G.rank(1) == 0
    assert G.describe(1) == "ω·ℤ/2"
    assert G.describe(0) == "ω·ℤ"
    assert ko_torus2().describe(2) == "ℤ ⊕ (ℤ/2)³"


def test_conjugation_action_ranks():
    assert ku_conjugation().ranks() == ku_point().rank_sequence()
