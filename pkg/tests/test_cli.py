import json
from pathlib import Path

import pytest

from picardium.cli import main

FIX = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    d = tmp_path / "cache"
    monkeypatch.setenv("PICARDIUM_CACHE", str(d))
    return d


def run(tmp_path, *args, name="out.json"):
    out = tmp_path / name
    argv = [str(a) for a in args] + ["--out", str(out)]
    status = main(argv)
    text = out.read_text()
    return status, json.loads(text), text


def cert(doc, claim):
    for c in doc["report"]["certificates"]:
        if c["claim"] == claim:
            return c
    raise KeyError(claim)


def test_trivialise_example(tmp_path):
    status, doc, _ = run(tmp_path, "trivialise", "--psi", FIX / "psi_trivial_z2.toml", "--subgroup", FIX / "sub_z2.toml")
    assert status == 0
    data = doc["report"]["data"]
    assert data["count"] == 4 and data["classes"] == 1 and data["admissible"]
    m = doc["manifest"]
    assert m["command"] == "trivialise"
    assert m["inputs"]["psi"].startswith("sha256:")
    assert m["orders"] == {"N": 1, "N'": 4, "N''": 8}
    assert set(m["conventions"]) == {"bracketing", "associator", "duality", "composition"}


def test_trivialise_no_solution_is_still_a_pass(tmp_path):
    status, doc, _ = run(tmp_path, "trivialise", "--psi", FIX / "ctx_z4k1.toml", "--subgroup", FIX / "sub_z4_even.toml")
    assert status == 0
    assert doc["report"]["data"]["count"] == 0
    assert doc["report"]["data"]["admissible"] is False


def test_catalog_hit_is_flagged(tmp_path, cache_dir):
    args = ("trivialise", "--psi", FIX / "ctx_z4k2.toml", "--subgroup", FIX / "sub_z4_even.toml")
    s1, first, _ = run(tmp_path, *args, name="a.json")
    s2, second, _ = run(tmp_path, *args, name="b.json")
    assert s1 == s2 == 0
    assert first["manifest"]["catalog"] == "stored"
    assert second["manifest"]["catalog"] == "hit"
    assert all(c.get("cached") is True for c in second["report"]["certificates"])
    assert not any("cached" in c for c in first["report"]["certificates"])
    assert first["report"]["data"] == second["report"]["data"]
    assert first["manifest"]["orders"] == second["manifest"]["orders"]
    s3, third, _ = run(tmp_path, *args, "--no-cache", name="c.json")
    assert third["manifest"]["catalog"] == "off"
    assert list(cache_dir.glob("*.json"))


def test_catalog_list_and_gc(tmp_path, cache_dir, capsys):
    run(tmp_path, "trivialise", "--psi", FIX / "psi_trivial_z2.toml", "--subgroup", FIX / "sub_z2.toml")
    capsys.readouterr()
    assert main(["catalog", "list"]) == 0
    rows = json.loads(capsys.readouterr().out)
    rows = rows if isinstance(rows, list) else rows.get("entries", rows)
    assert len(rows) == 1 and rows[0]["valid"]
    (cache_dir / ("0" * 64 + ".json")).write_text("{}")
    assert main(["catalog", "gc"]) == 0
    capsys.readouterr()
    assert len(list(cache_dir.glob("*.json"))) == 1
    assert main(["catalog", "gc", "--all"]) == 0
    assert not list(cache_dir.glob("*.json"))


def test_verify_thm414(tmp_path):
    status, doc, _ = run(tmp_path, "verify", "--theorem", "thm414", "--ctx", FIX / "ctx_z4k2.toml",
                         "--subgroup", FIX / "sub_z4_even.toml", "--omega", FIX / "omega_z4_even.toml")
    assert status == 0
    assert cert(doc, "s o i = id_Q")["status"] == "pass"
    assert all("paper_anchor" in c and c["paper_anchor"] for c in doc["report"]["certificates"])


def test_bad_omega_is_not_a_trivialisation(tmp_path):
    status, doc, _ = run(tmp_path, "verify", "--theorem", "thm414", "--ctx", FIX / "ctx_z4k1.toml",
                         "--subgroup", FIX / "sub_z4_even.toml", "--omega", FIX / "omega_z4_even.toml")
    assert status == 1
    assert doc["error"]["type"] == "NotATrivialisation"
    assert doc["error"]["paper_anchor"]
    assert doc["report"]["certificates"] == []


def test_malformed_group_table(tmp_path):
    status, doc, _ = run(tmp_path, "check-cocycle", FIX / "bad_table.toml")
    assert status == 2
    assert doc["error"]["type"] == "SchemaError"
    assert "triple (1, 1, 2)" in doc["error"]["message"]


def test_unparsable_and_missing_input(tmp_path):
    status, doc, _ = run(tmp_path, "check-cocycle", FIX / "broken.toml")
    assert status == 2 and doc["error"]["type"] == "ParseError"
    status, doc, _ = run(tmp_path, "check-cocycle", FIX / "does_not_exist.toml")
    assert status == 2 and doc["error"]["type"] == "ParseError"


def test_check_cocycle_witness(tmp_path):
    status, doc, _ = run(tmp_path, "check-cocycle", FIX / "not_cocycle_z4.toml")
    assert status == 1
    w = cert(doc, "cocycle identity")["witness"]
    assert w["tuple"] == [1, 1, 1, 1]
    assert w["lhs"] != w["rhs"] and set(w["lhs"]) == {"N", "e"}
    status, doc, _ = run(tmp_path, "check-cocycle", FIX / "psi_trivial_z2.toml")
    assert status == 0


def test_corrupt_omega_associativity_record(tmp_path):
    status, doc, _ = run(tmp_path, "build-q", "--ctx", FIX / "ctx_klein.toml", "--subgroup", FIX / "sub_klein.toml",
                         "--omega", FIX / "omega_klein_corrupt.toml")
    assert status == 1
    c = cert(doc, "associativity")
    assert c["status"] == "fail"
    w = c["witness"]
    assert len(w["source"]["leaf_grades"]) == 3
    assert {w["lhs"], w["rhs"]} == {"-1", "1"}
    assert doc["report"]["data"]["d_omega_equals_psi"] is False


def test_build_q_then_check_algebra(tmp_path):
    alg = tmp_path / "q.json"
    status, doc, _ = run(tmp_path, "build-q", "--ctx", FIX / "ctx_z4k2.toml", "--subgroup", FIX / "sub_z4_even.toml",
                         "--omega", FIX / "omega_z4_even.toml", "--emit-algebra", alg)
    assert status == 0 and doc["report"]["data"]["symmetric"]
    status, doc, _ = run(tmp_path, "check-algebra", alg, name="chk.json")
    assert status == 0
    assert doc["report"]["data"]["beta_A"] == "1"
    assert doc["report"]["data"]["beta_1"] == "2"


def test_fixed_algebra_and_dims(tmp_path):
    status, doc, _ = run(tmp_path, "fixed-algebra", "--subgroup", FIX / "sub_z2.toml")
    assert status == 0 and doc["report"]["data"]["dim"] == 2
    status, doc, _ = run(tmp_path, "dims", "--ctx", FIX / "ctx_z4k2.toml", "--object", FIX / "object_z4.json")
    assert status == 0
    # an empty certificate list is a valid document
    assert doc["report"]["certificates"] == []
    # L_1 has dimension -1 and L_2 has dimension 1 under this psi
    assert doc["report"]["data"]["dim_l"] == {"N": 1, "coeffs": ["1"]}
    assert doc["report"]["data"]["spherical"] is True


def test_verify_prop45_and_appendix(tmp_path):
    for theorem in ("prop45", "appendix"):
        status, doc, _ = run(tmp_path, "verify", "--theorem", theorem, "--ctx", FIX / "ctx_z4k2.toml",
                             "--subgroup", FIX / "sub_z4_even.toml", name=f"{theorem}.json")
        assert status == 0, theorem
        assert doc["manifest"]["options"].get("omega") == "first trivialisation"


def test_verify_thm413(tmp_path):
    status, doc, _ = run(tmp_path, "verify", "--theorem", "thm413", "--ctx", FIX / "ctx_z4k2.toml",
                         "--subgroup", FIX / "sub_z4_even.toml")
    assert status == 0
    assert doc["report"]["data"]["trivialisations"] == 16


def test_stdout_and_stderr(capsys):
    status = main(["check-cocycle", str(FIX / "psi_trivial_z2.toml")])
    out, err = capsys.readouterr()
    assert status == 0
    assert json.loads(out)["report"]["title"] == "cocycle check"
    assert "1 passed, 0 failed" in err


def test_usage_error_exit_code():
    assert main(["verify", "--theorem", "nope", "--ctx", "x"]) == 2


def test_reports_are_byte_identical(tmp_path):
    args = ("verify", "--theorem", "thm414", "--ctx", FIX / "ctx_z4k2.toml", "--subgroup", FIX / "sub_z4_even.toml",
            "--omega", FIX / "omega_z4_even.toml")
    _, _, a = run(tmp_path, *args, name="a.json")
    _, _, b = run(tmp_path, *args, name="b.json")
    assert a == b


def _strip_toolchain(doc):
    doc["manifest"].pop("toolchain")
    return doc


@pytest.mark.parametrize("name,args", [
    ("trivialise_z2", ("trivialise", "--psi", "psi_trivial_z2.toml", "--subgroup", "sub_z2.toml", "--no-cache")),
    ("check_cocycle_z4", ("check-cocycle", "not_cocycle_z4.toml")),
    ("dims_z4", ("dims", "--ctx", "ctx_z4k2.toml", "--object", "object_z4.json")),
])
def test_golden_reports(tmp_path, name, args):
    args = [FIX / a if a.endswith((".toml", ".json")) else a for a in args]
    _, doc, _ = run(tmp_path, *args)
    golden = json.loads((GOLDEN / f"{name}.json").read_text())
    assert _strip_toolchain(doc) == _strip_toolchain(golden)
