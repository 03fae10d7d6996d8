import json
import os

from homleibniz.cli import main

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fx(name):
    return os.path.join(FIXTURES, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate_passes_on_good_documents(capsys):
    code, out, _ = run(capsys, "validate", fx("leibniz_ff_e.json"), fx("identity_leibniz.json"))
    assert code == 0
    assert "status:     PASS" in out


def test_validate_fails_on_bad_bracket(capsys):
    code, out, _ = run(capsys, "validate", fx("bad_bracket.json"))
    assert code == 1
    assert "hom-leibniz" in out and "FAIL" in out


def test_missing_file_is_an_input_error(capsys):
    code, _, err = run(capsys, "validate", fx("no_such_file.json"))
    assert code == 2
    assert "input error" in err


def test_cohomology_hand_values(capsys):
    code, out, _ = run(capsys, "cohomology", fx("abelian.json"), "--degrees", "1..2", "--format", "json")
    assert code == 0
    rows = json.loads(out)["tables"][0]["rows"]
    assert rows == [[1, 4, 0, 4], [2, 8, 0, 8]]

    code, out, _ = run(capsys, "cohomology", fx("leibniz_ff_e.json"), "--degrees", "1", "--format", "json")
    assert code == 0
    assert json.loads(out)["tables"][0]["rows"] == [[1, 4, 2, 2]]


def test_degree_zero_is_a_usage_error(capsys):
    code, _, err = run(capsys, "cohomology", fx("abelian.json"), "--degrees", "0..1")
    assert code == 2


def test_bad_convention_label_is_an_input_error(capsys):
    code, _, err = run(capsys, "cohomology", fx("abelian.json"), "--convention", "bogus")
    assert code == 2


def test_morphism_cohomology_flags_vanishing_transfer(capsys):
    code, out, _ = run(capsys, "morphism-cohomology", fx("vanishing_pair.json"), "--degrees", "1..2")
    assert code == 0
    assert "vanishing transfer at p=2" in out
    assert "H^2(phi)=0" in out


def test_deform_check_and_obstruct(capsys):
    code, out, _ = run(capsys, "deform", "check", fx("abelian_ff_e_deformation.json"))
    assert code == 0
    code, out, _ = run(capsys, "deform", "obstruct", fx("abelian_ff_e_deformation.json"), "--order", "2")
    assert code == 0
    assert "F_2 vanishes" in out


def test_deform_extend_reports_obstruction_with_exit_one(capsys):
    battery = json.load(open(fx("deform_battery.json")))
    blocked = next(e for e in battery["entries"] if not e["extends"])
    code, out, _ = run(capsys, "deform", "extend", fx(blocked["file"]), "--order", "2")
    assert code == 1
    assert "obstructed" in out


def test_deform_extend_succeeds_and_emits(capsys, tmp_path):
    battery = json.load(open(fx("deform_battery.json")))
    good = next(e for e in battery["entries"] if e["extends"])
    out_path = str(tmp_path / "ext.json")
    code, out, _ = run(capsys, "deform", "extend", fx(good["file"]), "--order", "2", "--emit", out_path)
    assert code == 0
    # the emitted document is itself a valid order-2 deformation
    code, out, _ = run(capsys, "deform", "check", out_path)
    assert code == 0


def test_json_reports_are_deterministic(capsys):
    _, first, _ = run(capsys, "cohomology", fx("leibniz_ff_e.json"), "--format", "json")
    _, second, _ = run(capsys, "cohomology", fx("leibniz_ff_e.json"), "--format", "json")
    assert first == second
    assert "digests" in json.loads(first)


def test_csv_rendering(capsys):
    code, out, _ = run(capsys, "cohomology", fx("leibniz_ff_e.json"), "--format", "csv", "--degrees", "1")
    assert code == 0
    assert out.splitlines()[0] == "section,name,value,details"


def test_fixtures_env_var_selects_selftest_corpus(capsys, monkeypatch, tmp_path):
    import shutil

    for name in ("abelian.json", "leibniz_ff_e.json"):
        shutil.copy(fx(name), tmp_path / name)
    monkeypatch.setenv("HOMLEIBNIZ_FIXTURES", str(tmp_path))
    code, out, _ = run(capsys, "validate")
    assert code == 0
    assert "abelian.json" in out and "leibniz_ff_e.json" in out


def test_validate_without_files_or_env_is_an_input_error(capsys, monkeypatch):
    monkeypatch.delenv("HOMLEIBNIZ_FIXTURES", raising=False)
    code, _, err = run(capsys, "validate")
    assert code == 2
