import json

import pytest

from equipart.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_theta_subcommand(capsys):
    data = run_json(capsys, "theta", "--k", "1")
    assert data["schema"] == 1
    assert data["theta_mod4"] == 2
    assert data["admissible_triple"] == [8, 5, 2]
    assert "paper_ref" in data


def test_theta_vanishing_has_no_triple(capsys):
    data = run_json(capsys, "theta", "--k", "3", "--no-cross-check")
    assert data["theta_mod4"] == 0
    assert data["admissible_triple"] is None


def test_cohomology_subcommand(capsys):
    data = run_json(capsys, "cohomology", "--n", "9")
    assert data["invariant_factors"] == [2, 2]
    assert data["free_rank"] == 0
    data = run_json(capsys, "cohomology", "--n", "10")
    assert data["invariant_factors"] == [4]
    assert data["generator_cocycles"] == [[1, -1]]


def test_degree_subcommands(capsys):
    data = run_json(capsys, "degree", "--m", "2", "--n", "2", "--sphere")
    assert data["degree_abs"] == 4
    data = run_json(capsys, "degree", "--m", "2", "--n", "4", "--certificate")
    assert data["degree"] == 3
    assert len(data["certificate"]["pairs"]) == 3
    assert all(pair["resultant_sign"] == 1 for pair in data["certificate"]["pairs"])


def test_resultant_subcommand(capsys):
    data = run_json(capsys, "resultant", "--p", "1,0,1", "--q", "4,0,1")
    assert data["resultant"] == 9
    data = run_json(capsys, "resultant", "--p", "1/2,1", "--q", "1,1")
    assert data["resultant"] == "1/2"


def test_admissible_subcommand(capsys):
    data = run_json(capsys, "admissible", "--d", "8", "--j", "5")
    assert data["verdict"] == "ADMISSIBLE_BY_PRIMARY_OBSTRUCTION"
    assert data["ramos_lower_bound"] == 8
    data = run_json(capsys, "admissible", "--d", "20", "--j", "13")
    assert data["verdict"] == "PRIMARY_OBSTRUCTION_VANISHES_INCONCLUSIVE"


def test_obstruction_example_subcommand(capsys):
    data = run_json(capsys, "obstruction-example")
    assert data["theta"] == 2
    assert data["group"] == "Z/4"


def test_congruence_subcommand(capsys):
    data = run_json(capsys, "congruence", "--k", "2")
    assert data["passed"] is True
    assert data["degree_value"] == 12


def test_every_report_has_schema_and_provenance(capsys):
    commands = [
        ("theta", "--k", "1"),
        ("cohomology", "--n", "9"),
        ("degree", "--m", "2", "--n", "2"),
        ("resultant", "--p", "1,0,1", "--q", "4,0,1"),
        ("admissible", "--d", "8", "--j", "5"),
        ("obstruction-example",),
        ("congruence", "--k", "1"),
        ("verify",),
    ]
    for argv in commands:
        data = run_json(capsys, *argv)
        assert data["schema"] == 1, argv
        assert isinstance(data["paper_ref"], dict) and data["paper_ref"], argv


def test_verify_exits_1_on_mismatch(capsys, monkeypatch):
    import equipart.cli as cli_mod

    real = cli_mod.theta_equipartition

    def tampered(k, *, cross_check=None):
        result = real(k, cross_check=cross_check)
        if k == 3:
            object.__setattr__(result, "theta_mod4", 1)
        return result

    monkeypatch.setattr(cli_mod, "theta_equipartition", tampered)
    code, out, _ = run_cli(capsys, "verify")
    assert code == 1
    data = json.loads(out)
    assert not data["all_passed"]
    assert any(not c["passed"] for c in data["checks"])


def test_verify_passes_and_is_deterministic(capsys):
    code, out1, _ = run_cli(capsys, "verify")
    assert code == 0
    code, out2, _ = run_cli(capsys, "verify")
    assert code == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["all_passed"] is True
    assert all(c["passed"] for c in data["checks"])


def test_text_format(capsys):
    code, out, _ = run_cli(capsys, "--format", "text", "cohomology", "--n", "10")
    assert code == 0
    assert "Z/4" in out
    code, out, _ = run_cli(capsys, "verify", "--format", "text")
    assert code == 0
    assert "all passed" in out


def test_invalid_arguments_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["theta"])  # missing --k
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["unknown-command"])
    assert exc.value.code == 2


def test_semantic_errors_exit_2(capsys):
    code, out, err = run_cli(capsys, "cohomology", "--n", "5")
    assert code == 2
    assert "n >= 8" in err
    code, out, err = run_cli(capsys, "degree", "--m", "3", "--n", "2")
    assert code == 2
    code, out, err = run_cli(capsys, "theta", "--k", "0")
    assert code == 2


def test_group_file_flag(tmp_path, capsys):
    path = tmp_path / "z2.cayley"
    path.write_text("order 2\n0 1\n1 0\ngenerators omega=1\n", encoding="utf-8")
    data = run_json(capsys, "--group", str(path), "theta", "--k", "1")
    assert data["group"]["order"] == 2
    assert data["group"]["generators"] == {"omega": 1}
    assert data["group"]["element_words"] == ["e", "omega"]


def test_group_file_diagnostics(tmp_path, capsys):
    path = tmp_path / "bad.cayley"
    path.write_text("order 2\n0 1\n1 7\ngenerators omega=1\n", encoding="utf-8")
    code, out, err = run_cli(capsys, "--group", str(path), "theta", "--k", "1")
    assert code == 2
    assert "line 3" in err and "column 2" in err
    code, out, err = run_cli(capsys, "--group", str(tmp_path / "missing"), "verify")
    assert code == 2
