import json
import os

import pytest

from stringyk.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_sym2(capsys):
    code, out, _ = invoke(capsys, "verify", "--model", "sym2_p1.toml")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == 1
    assert data["passed"] is True
    assert data["cch_report"]["homomorphism"] is True
    assert data["cch_report"]["metric_violations"] > 0


def test_verify_is_byte_deterministic(capsys):
    _, out1, _ = invoke(capsys, "verify", "--model", "p1_z2.toml")
    _, out2, _ = invoke(capsys, "verify", "--model", "p1_z2.toml")
    assert out1 == out2


def test_ring_table_output(capsys):
    code, out, _ = invoke(capsys, "ring", "--model", "klein4.toml",
                          "--format", "table")
    assert code == 0
    # the Klein relation e_a * e_b = e_ab is printed
    assert any("1 * " in line and "=" in line for line in out.splitlines())


def test_ring_json_rationals_are_strings(capsys):
    code, out, _ = invoke(capsys, "ring", "--model", "sym2_p1.toml")
    assert code == 0
    data = json.loads(out)
    gradings = data["rings"]["chow"]["gradings"]
    assert gradings["w"] == ["1", "3"]  # exact strings, not floats


def test_eichler_command(capsys):
    code, out, _ = invoke(capsys, "eichler", "--group", "z3",
                          "--monodromy", "w,w,w")
    assert code == 0
    data = json.loads(out)
    assert data["equal"] is True
    assert data["character"]["w"] == "z(3)^1"


def test_eichler_element_indices(capsys):
    code, out, _ = invoke(capsys, "eichler", "--group", "z4",
                          "--monodromy", "1,1,2")
    assert code == 0


def test_eichler_genus_one(capsys):
    code, out, _ = invoke(capsys, "eichler", "--group", "s3",
                          "--genus", "1", "--monodromy", "",
                          "--subgroup", "1,3")
    assert code == 0


def test_obstruction_command(capsys):
    code, out, _ = invoke(capsys, "obstruction", "--model", "z3_sl2.toml")
    assert code == 0
    data = json.loads(out)
    assert data["all_honest"] is True
    assert data["ages"]["w"] == "1"


def test_euler_generating_function(capsys):
    code, out, _ = invoke(capsys, "euler", "--chi", "24", "--n", "2")
    assert code == 0
    data = json.loads(out)
    assert data == {"schema": 1, "n": 2, "chi": 24, "stringy": "324",
                    "dhvw": "324", "equal": True}


def test_euler_model_and_group(capsys):
    code, out, _ = invoke(capsys, "euler", "--model", "sym2_p1.toml")
    assert code == 0
    assert json.loads(out)["stringy"] == "5"
    code, out, _ = invoke(capsys, "euler", "--group", "q8")
    assert code == 0
    assert json.loads(out)["stringy"] == "5"


def test_twist_command(capsys):
    code, out, _ = invoke(capsys, "twist", "--model", "sym2_p1.toml",
                          "--cocycle", "sign_z2.toml")
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True
    assert data["changed_sector_pairs"] == [["w", "w"]]


def test_input_errors_exit_2(capsys):
    code, _, err = invoke(capsys, "verify", "--model", "missing.toml")
    assert code == 2 and "missing.toml" in err
    code, _, err = invoke(capsys, "eichler", "--group", "z3",
                          "--monodromy", "w,w")
    assert code == 2  # product is not the identity
    code, _, err = invoke(capsys, "eichler", "--group", "nosuch",
                          "--monodromy", "")
    assert code == 2


def test_catalog_dir_override(tmp_path, capsys, monkeypatch):
    import shutil
    from stringyk.modelio import catalog_dir
    src = catalog_dir() / "p1_z2.toml"
    shutil.copy(src, tmp_path / "custom.toml")
    monkeypatch.setenv("STRINGY_CATALOG_DIR", str(tmp_path))
    code, out, _ = invoke(capsys, "euler", "--model", "custom.toml")
    assert code == 0
    assert json.loads(out)["stringy"] == "4"


def test_group_from_toml_file(tmp_path, capsys):
    path = tmp_path / "grp.toml"
    path.write_text('[group]\npermutation_generators = [[1, 0, 2], [0, 2, 1]]\n')
    code, out, _ = invoke(capsys, "euler", "--group", str(path))
    assert code == 0
    assert json.loads(out)["stringy"] == "3"


def test_eichler_from_datum_file(tmp_path, capsys):
    path = tmp_path / "cover.toml"
    path.write_text(
        '[group]\nname = "z3"\n\n[monodromy]\ngenus = 0\nmonodromy = [1, 1, 1]\n')
    code, out, _ = invoke(capsys, "eichler", "--model", str(path))
    assert code == 0
    data = json.loads(out)
    assert data["equal"] is True and data["character"]["w"] == "z(3)^1"


def test_ring_output_is_byte_deterministic(capsys):
    _, out1, _ = invoke(capsys, "ring", "--model", "sym2_p1.toml")
    _, out2, _ = invoke(capsys, "ring", "--model", "sym2_p1.toml")
    assert out1 == out2
