import io
import json

import pytest

from realcstar.catalog import baum_connes_shift_check
from realcstar.cli import run
from realcstar.groups import builtin_group, group_to_json


def call(*argv, cache=None):
    out = io.StringIO()
    extra = ["--no-cache"] if cache is None else ["--cache-dir", str(cache)]
    code = run(list(argv) + extra, stdout=out)
    return code, out.getvalue()


def test_group_decompose_builtin():
    code, out = call("group", "decompose", "--builtin", "Q8")
    assert code == 0
    assert out.splitlines()[0] == "4·M1(R) ⊕ M1(H)"
    code, out = call("group", "decompose", "--builtin", "D8", "--format", "json")
    data = json.loads(out)
    assert data["algebra"] == "4·M1(R) ⊕ M2(R)" and data["indicators"] == [1, 1, 1, 1, 1]


def test_group_file_and_table_inputs(tmp_path):
    g = tmp_path / "s3.json"
    g.write_text(json.dumps({"name": "S3", "permutations": [[1, 0, 2], [1, 2, 0]]}))
    code, out = call("group", "types", str(g), "--format", "json")
    assert code == 0 and json.loads(out)["counts"] == {"real": 3, "quaternionic": 0, "complex_pairs": 0}
    from realcstar.chartab import compute_character_table
    t = tmp_path / "q8-table.json"
    t.write_text(json.dumps(compute_character_table(builtin_group("Q8")).to_json()))
    code, out = call("group", "decompose", str(t))
    assert code == 0 and out.startswith("4·M1(R) ⊕ M1(H)")


def test_group_batch(tmp_path):
    for name in ("Q8", "Z/3"):
        (tmp_path / f"{name.replace('/', '')}.json").write_text(json.dumps(group_to_json(builtin_group(name))))
    code, out = call("group", "decompose", "--batch", str(tmp_path), "--format", "json")
    assert code == 0
    algs = sorted(r["algebra"] for r in json.loads(out)["batch"])
    assert algs == ["4·M1(R) ⊕ M1(H)", "M1(R) ⊕ M1(C)"]


def test_ktheory():
    code, out = call("ktheory", "table", "ksc")
    assert code == 0 and out.strip() == "(ℤ, ℤ/2, 0, ℤ)"
    code, out = call("ktheory", "shift-eq", "ko", "ksp", "--format", "json")
    assert json.loads(out)["shifts"] == [4]


def test_ktheory_shift_eq_files(tmp_path):
    from realcstar.kcalc import ko_torus2, shift
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps(ko_torus2().to_json()))
    b.write_text(json.dumps(shift(ko_torus2(), 3).to_json()))
    code, out = call("ktheory", "shift-eq", str(a), str(b), "--format", "json")
    assert code == 0 and json.loads(out)["shifts"] == [3]


def test_cyclic(tmp_path):
    code, out = call("cyclic", "homology", "--builtin", "sign", "--order", "6", "--degree", "2")
    assert out.strip() == "H_2 = ℤ/2"
    m = tmp_path / "h.json"
    m.write_text(json.dumps({"order": 2, "matrix": [[0, 1], [1, 0]]}))
    code, out = call("cyclic", "cohomology", "--module", str(m), "--format", "json")
    data = json.loads(out)
    assert data["text"] == {"0": "ℤ", "1": "0", "2": "0", "3": "0", "4": "0"}


def test_space_weyl_catalog():
    code, out = call("space", "brauer", "--builtin", "16-cell-antipodal", "--format", "json")
    assert json.loads(out)["dd_group"] == [0, [2]]
    code, out = call("weyl", "su2", "--spin", "1/2", "--format", "json")
    assert json.loads(out)["indicator"] == -1
    code, out = call("weyl", "weil-h", "--n", "4")
    assert "flag:" in out
    code, out = call("catalog", "verify")
    assert code == 0 and "sizes (3, 4, 3)" in out
    code, out = call("catalog", "bc-check", "--format", "json")
    assert json.loads(out) == json.loads(json.dumps(baum_connes_shift_check(), ensure_ascii=False))


def test_exit_codes(tmp_path):
    assert call("group", "decompose", "--builtin", "Q9")[0] == 1
    assert call("weyl", "weil-h", "--n", "0")[0] == 1
    assert call("group")[0] == 2
    assert call("group", "decompose")[0] == 2
    assert call("group", "decompose", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("group", "decompose", str(bad))[0] == 1


@pytest.mark.parametrize("argv", [
    ("group", "decompose", "--builtin", "S4"),
    ("ktheory", "table", "ko-t2"),
    ("catalog", "verify"),
    ("space", "brauer", "--builtin", "torus-trivial"),
])
def test_text_is_derived_from_json(argv, tmp_path):
    # a JSON run fills the cache; a later text run renders that stored payload
    _, js = call(*argv, "--format", "json", cache=tmp_path)
    assert json.loads(js)
    _, from_cache = call(*argv, "--format", "text", cache=tmp_path)
    _, fresh = call(*argv, "--format", "text")
    assert from_cache == fresh and fresh.strip()


def test_cache_hit_is_identical(tmp_path):
    first = call("group", "decompose", "--builtin", "S4", cache=tmp_path)
    entries = list(tmp_path.glob("*.json"))
    assert len(entries) == 1
    second = call("group", "decompose", "--builtin", "S4", cache=tmp_path)
    assert first == second
    fresh = call("group", "decompose", "--builtin", "S4")
    assert fresh == first


def test_cache_keyed_by_file_content(tmp_path):
    cache = tmp_path / "cache"
    g = tmp_path / "g.json"
    g.write_text(json.dumps(group_to_json(builtin_group("Q8"))))
    _, a = call("group", "decompose", str(g), cache=cache)
    g.write_text(json.dumps(group_to_json(builtin_group("D8"))))
    _, b = call("group", "decompose", str(g), cache=cache)
    assert a.splitlines()[0] != b.splitlines()[0]


def test_tampered_cache_recomputed(tmp_path, caplog):
    _, first = call("ktheory", "table", "ksc", cache=tmp_path)
    (entry,) = tmp_path.glob("*.json")
    record = json.loads(entry.read_text())
    record["payload"]["degrees"][1] = "ℤ/3"
    entry.write_text(json.dumps(record))
    with caplog.at_level("WARNING", logger="realcstar"):
        _, again = call("ktheory", "table", "ksc", cache=tmp_path)
    assert again == first
    assert any("corrupt cache entry" in r.message for r in caplog.records)
    entry.write_text("garbage")
    assert call("ktheory", "table", "ksc", cache=tmp_path)[1] == first


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("REALCSTAR_CACHE_DIR", str(tmp_path))
    out = io.StringIO()
    assert run(["weyl", "su2", "--spin", "2"], stdout=out) == 0
    assert list(tmp_path.glob("*.json"))


def test_no_cache_writes_nothing(tmp_path, monkeypatch):
    monkeypatch.setenv("REALCSTAR_CACHE_DIR", str(tmp_path))
    run(["weyl", "su2", "--spin", "2", "--no-cache"], stdout=io.StringIO())
    assert not list(tmp_path.glob("*.json"))
