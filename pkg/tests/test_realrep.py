from itertools import product

import numpy as np
import pytest

from realcstar.chartab import CharacterTable, compute_character_table
from realcstar.errors import (
    InfiniteUnsupported,
    NonIntegralIndicator,
    NotAssociative,
    NotSemisimple,
    OddQuaternionicDim,
)
from realcstar.groups import BUILTIN_NAMES, builtin_group
from realcstar.multiplicity import OMEGA
from realcstar.realrep import (
    IrrepType,
    RealAlgebra,
    classify_types,
    complex_wedderburn,
    complexify,
    decompose_by_structure_constants,
    direct_sum_constants,
    division_ring_constants,
    fs_indicators,
    group_algebra_constants,
    matrix_algebra_constants,
    signature,
    tensor_constants,
    tensor_real,
    wedderburn_real,
)


def table(name):
    return compute_character_table(builtin_group(name))


def brute_indicator_sum(G, chi_of_element):
    """(1/|G|) Σ_g χ(g²) by walking every element."""
    return sum(chi_of_element(int(G.mult[g, g])) for g in range(G.order)) / G.order


def test_fs_examples():
    assert fs_indicators(table("Q8")) == [1, 1, 1, 1, -1]
    assert fs_indicators(table("D8")) == [1, 1, 1, 1, 1]
    z4 = fs_indicators(table("Z/4"))
    assert sorted(z4) == [0, 0, 1, 1]


def test_fs_z4_by_direct_summation():
    G = builtin_group("Z/4")
    T = compute_character_table(G)
    D = T.class_data
    for a in range(4):
        nu = brute_indicator_sum(G, lambda g: T.values[a, D.class_of[g]])
        assert abs(nu - fs_indicators(T)[a]) < 1e-12


def test_classify_examples():
    q8 = classify_types(table("Q8"))
    assert q8.counts() == {"real": 4, "quaternionic": 1, "complex_pairs": 0}
    z3 = classify_types(table("Z/3"))
    assert z3.counts() == {"real": 1, "quaternionic": 0, "complex_pairs": 1}
    z4 = classify_types(table("Z/4"))
    assert z4.counts() == {"real": 2, "quaternionic": 0, "complex_pairs": 1}
    assert all(z4.permutation[z4.permutation[a]] == a for a in range(4))


def test_wedderburn_examples():
    assert str(wedderburn_real(table("Q8"))) == "4·M1(R) ⊕ M1(H)"
    assert str(wedderburn_real(table("D8"))) == "4·M1(R) ⊕ M2(R)"
    assert str(wedderburn_real(table("Z/4"))) == "2·M1(R) ⊕ M1(C)"
    assert wedderburn_real(table("Q8")).real_dimension() == 8


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_wedderburn_dimension_and_complexification(name):
    T = table(name)
    A = wedderburn_real(T)
    assert A.real_dimension() == T.group_order
    assert complexify(A) == complex_wedderburn(T)
    for nu, d in zip(fs_indicators(T), T.dims):
        if nu == -1:
            assert d % 2 == 0


@pytest.mark.parametrize("name", ["Z/3", "Z/4", "Q8", "D8", "S3", "Z/6"])
def test_wedderburn_matches_structure_constant_oracle(name):
    G = builtin_group(name)
    oracle = decompose_by_structure_constants(G.order, group_algebra_constants(G))
    assert wedderburn_real(compute_character_table(G)) == oracle


def test_indicators_survive_relabeling():
    G = builtin_group("Q8")
    perm = np.random.default_rng(5).permutation(8)
    assert sorted(fs_indicators(compute_character_table(G.relabel(perm)))) == sorted(
        fs_indicators(compute_character_table(G)))


def test_corrupt_table_rejected():
    T = table("Q8")
    vals = np.array(T.values)
    sq = list(T.squaring_map)
    sq[2] = 2  # pretend elements of order 4 square into their own class
    bad = CharacterTable(T.group_order, T.class_sizes, tuple(sq), vals)
    with pytest.raises(NonIntegralIndicator):
        fs_indicators(bad)


def test_odd_quaternionic_rejected():
    # Z/2 table with a corrupt squaring map sending both classes to the
    # nontrivial one: indicators (1, -1), a 1-dimensional "quaternionic" irrep
    bad = CharacterTable(2, (1, 1), (1, 1), np.array([[1, 1], [1, -1]], dtype=complex))
    with pytest.raises(OddQuaternionicDim):
        wedderburn_real(bad)


def test_complexify_examples():
    assert complexify(RealAlgebra.of(("R", 2))) == RealAlgebra.of(("C", 2))
    assert complexify(RealAlgebra.of(("H", 1))) == RealAlgebra.of(("C", 2))
    assert complexify(RealAlgebra.of(("R", 1, 4), ("H", 1))) == RealAlgebra.of(("C", 1, 4), ("C", 2))
    assert complexify(RealAlgebra.of(("C", 3, OMEGA))) == RealAlgebra.of(("C", 3, OMEGA))


def test_tensor_examples():
    H = RealAlgebra.of(("H", 1))
    assert tensor_real(H, H) == RealAlgebra.of(("R", 4))
    X = RealAlgebra.of(("R", 2), ("C", 1, 3))
    assert tensor_real(RealAlgebra.of(("R", 1)), X) == X
    C = RealAlgebra.of(("C", 1))
    assert tensor_real(C, C) == RealAlgebra.of(("C", 1, 2))
    with pytest.raises(InfiniteUnsupported):
        tensor_real(RealAlgebra.of(("R", 1, OMEGA)), C)


@pytest.mark.parametrize("a,b", list(product("RCH", repeat=2)))
def test_tensor_agrees_with_structure_constants(a, b):
    c = tensor_constants(division_ring_constants(a), division_ring_constants(b))
    got = decompose_by_structure_constants(len(c), c)
    assert got == tensor_real(RealAlgebra.of((a, 1)), RealAlgebra.of((b, 1)))


def test_matrix_over_division_ring_constants():
    c = tensor_constants(matrix_algebra_constants(2), division_ring_constants("H"))
    assert decompose_by_structure_constants(16, c) == RealAlgebra.of(("H", 2))
    c = direct_sum_constants(matrix_algebra_constants(2), division_ring_constants("H"),
                             division_ring_constants("C"))
    assert decompose_by_structure_constants(10, c) == RealAlgebra.of(("R", 2), ("C", 1), ("H", 1))


def test_irrational_centers():
    # ℚ(√2): two real embeddings, so ℝ ⊕ ℝ after extending scalars
    sqrt2 = [[[1, 0], [0, 1]], [[0, 1], [2, 0]]]
    assert decompose_by_structure_constants(2, sqrt2) == RealAlgebra.of(("R", 1, 2))
    # ℚ(∛2): one real embedding and one complex pair
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for i in range(3):
        for j in range(3):
            k = i + j
            c[i][j][k % 3] = 2 if k >= 3 else 1
    assert decompose_by_structure_constants(3, c) == RealAlgebra.of(("R", 1), ("C", 1))


def test_one_dimensional():
    assert decompose_by_structure_constants(1, [[[1]]]) == RealAlgebra.of(("R", 1))


def test_not_semisimple_dual_numbers():
    dual = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    with pytest.raises(NotSemisimple):
        decompose_by_structure_constants(2, dual)


def test_not_associative():
    c = division_ring_constants("H")
    c[1][2][3] = -1  # i·j = -k breaks associativity with the rest of the table
    with pytest.raises(NotAssociative):
        decompose_by_structure_constants(4, c)


def test_signature_examples():
    assert signature([[1, 0], [0, -1]]) == (1, 1, 0)
    assert signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert signature([[0, 0], [0, 0]]) == (0, 0, 2)
    assert signature([[2, 1], [1, 2]]) == (2, 0, 0)


def test_algebra_json_roundtrip():
    A = RealAlgebra.of(("H", 1, OMEGA), ("R", 3, 2))
    assert RealAlgebra.from_json(A.to_json()) == A
    assert A.to_json() == [["R", 3, 2], ["H", 1, "omega"]]
    assert str(A) == "2·M3(R) ⊕ ω·M1(H)"


def test_types_enum():
    assert IrrepType.from_indicator(-1) is IrrepType.QUATERNIONIC
