import json
from itertools import product

import numpy as np
import pytest

from realcstar.chartab import (
    compute_character_table,
    conjugate_partner,
    ingest_character_table,
    table_from_json,
)
from realcstar.errors import FormatError, OrthogonalityViolation
from realcstar.groups import BUILTIN_NAMES, builtin_group, conjugacy_data


def degree_solutions(order, h):
    """All nondecreasing degree vectors with one leading 1 and sum of squares = order."""
    out = []
    for rest in product(range(1, int(order ** 0.5) + 1), repeat=h - 1):
        if list(rest) == sorted(rest) and 1 + sum(d * d for d in rest) == order:
            out.append((1,) + rest)
    return out


def test_cyclic3_cube_roots():
    T = compute_character_table(builtin_group("Z/3"))
    assert T.dims == (1, 1, 1)
    w = np.exp(2j * np.pi / 3)
    roots = [1, w, w * w]
    for row in T.values:
        for z in row:
            assert min(abs(z - r) for r in roots) < 1e-12


def test_q8_dims():
    assert compute_character_table(builtin_group("Q8")).dims == (1, 1, 1, 1, 2)


def test_s3_dims_against_degree_enumeration():
    T = compute_character_table(builtin_group("S3"))
    assert degree_solutions(6, 3) == [(1, 1, 2)]
    assert T.dims == (1, 1, 2)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_orthogonality_and_sums(name):
    G = builtin_group(name)
    T = compute_character_table(G)
    sizes = np.array(T.class_sizes)
    h = T.num_irreps
    gram = (T.values * sizes) @ T.values.conj().T / G.order
    assert np.max(np.abs(gram - np.eye(h))) < 1e-8
    col = T.values.conj().T @ T.values
    assert np.max(np.abs(col - np.diag(G.order / sizes))) < 1e-8
    assert sum(d * d for d in T.dims) == G.order
    assert T.error_bound <= 1e-9
    for a in range(1, h):
        assert abs(np.sum(sizes * T.values[a])) < 1e-8
    assert np.allclose(T.values[0], 1)


@pytest.mark.parametrize("name", ["Q8", "D8", "S4", "Z/6"])
def test_relabeling_gives_same_table(name):
    G = builtin_group(name)
    T = compute_character_table(G)
    rng = np.random.default_rng(11)
    perm = rng.permutation(G.order)
    H = G.relabel(perm)
    DH = conjugacy_data(H)
    TH = compute_character_table(H, DH)
    # column of H matching class c of G: the class containing perm[rep_c]
    cols = [DH.class_of[int(perm[r])] for r in T.class_data.representatives]
    assert TH.dims == T.dims
    aligned = TH.values[:, cols]
    unmatched = list(range(T.num_irreps))
    for row in T.values:
        hit = next(b for b in unmatched if np.allclose(aligned[b], row, atol=1e-9))
        unmatched.remove(hit)


def test_ingest_roundtrip(tmp_path):
    T = compute_character_table(builtin_group("Q8"))
    p = tmp_path / "q8.json"
    p.write_text(json.dumps(T.to_json()))
    U = ingest_character_table(p)
    assert U.dims == (1, 1, 1, 1, 2)
    assert np.allclose(U.values, T.values)


def test_ingest_perturbed_entry(tmp_path):
    data = compute_character_table(builtin_group("Q8")).to_json()
    data["characters"][4][2][0] += 0.01
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    with pytest.raises(OrthogonalityViolation) as info:
        ingest_character_table(p)
    assert info.value.residual > 1e-8


def test_ingest_bad_degrees():
    data = compute_character_table(builtin_group("Q8")).to_json()
    data["characters"][4][0] = [3.0, 0.0]
    with pytest.raises(FormatError):
        table_from_json(data)


def test_ingest_malformed():
    with pytest.raises(FormatError):
        table_from_json({"group_order": 2})


def test_conjugate_partner_z4():
    T = compute_character_table(builtin_group("Z/4"))
    pairs = {a: conjugate_partner(T.values, a) for a in range(4)}
    self_conj = [a for a, b in pairs.items() if b == [a]]
    assert len(self_conj) == 2
