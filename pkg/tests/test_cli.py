"""Command-line interface: exit codes, artifacts, self-checks."""
import json

import pytest

from captrans import fileio
from captrans.cli import main
from captrans.problem import example_instance


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def write_example2(tmp_path, n=16):
    p, _ = example_instance(2, n)
    path = tmp_path / "prob.json"
    fileio.write_problem(p, path)
    return p, path


def test_missing_input_is_a_file_error(tmp_path, capsys):
    code, _, err = run(["solve", "--input", tmp_path / "nope.json"], capsys)
    assert code == 2
    assert "file error" in err


def test_malformed_input_is_a_file_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{]")
    code, _, err = run(["solve", "--input", bad], capsys)
    assert code == 2
    assert "file format error" in err


def test_bad_flag_value_exits_2(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--mode", "symbolic", "--input", "x.json"])
    assert exc.value.code == 2


def test_domain_error_exits_3(capsys):
    code, _, err = run(["example", "2", "--grid-n", "6"], capsys)
    assert code == 3
    assert "domain error" in err


def test_solve_writes_artifacts(tmp_path, capsys):
    p, path = write_example2(tmp_path)
    out_dir = tmp_path / "run"
    code, out, _ = run(["solve", "--input", path, "--output-dir", out_dir], capsys)
    assert code == 0
    assert "status: optimal" in out
    doc = json.loads((out_dir / "result.json").read_text())
    assert doc["status"] == "optimal" and doc["objective"] == "65/16384"
    plan = fileio.read_plan_csv(out_dir / "plan.csv", p.m, p.n, "exact")
    assert plan.h.sum() == p.f.sum()
    fileio.read_certificate(out_dir / "certificate.json", p.m, p.n, "exact")


def test_solve_verify_round_trip(tmp_path, capsys):
    _, path = write_example2(tmp_path)
    out_dir = tmp_path / "run"
    assert run(["solve", "--input", path, "--output-dir", out_dir], capsys)[0] == 0
    code, out, _ = run(["verify-certificate", "--input", path,
                        "--plan", out_dir / "plan.csv",
                        "--certificate", out_dir / "certificate.json",
                        "--output-dir", out_dir], capsys)
    assert code == 0
    assert "[ok]" in out
    rep = json.loads((out_dir / "verify_report.json").read_text())
    assert rep["result"] == "pass"


def test_verify_rejects_tampered_certificate(tmp_path, capsys):
    _, path = write_example2(tmp_path)
    out_dir = tmp_path / "run"
    run(["solve", "--input", path, "--output-dir", out_dir], capsys)
    cert = json.loads((out_dir / "certificate.json").read_text())
    cert["u"][0] = "7/1"
    (out_dir / "cert2.json").write_text(json.dumps(cert))
    code, out, _ = run(["verify-certificate", "--input", path,
                        "--plan", out_dir / "plan.csv",
                        "--certificate", out_dir / "cert2.json",
                        "--output-dir", out_dir], capsys)
    assert code == 5
    assert "[FAIL]" in out


def test_analyze_emits_report_and_heatmap(tmp_path, capsys):
    _, path = write_example2(tmp_path)
    out_dir = tmp_path / "run"
    run(["solve", "--input", path, "--output-dir", out_dir], capsys)
    code, out, _ = run(["analyze", "--input", path, "--plan", out_dir / "plan.csv",
                        "--output-dir", out_dir], capsys)
    assert code == 0
    pgm = (out_dir / "support.pgm").read_text().splitlines()
    assert pgm[0] == "P2" and pgm[1] == "16 16" and pgm[2] == "255"
    assert len(pgm) == 3 + 16
    rep = json.loads((out_dir / "structure_report.json").read_text())
    assert rep["witness"]["counts"]["fractional"] == 0


def test_example_subcommands_self_check(tmp_path, capsys):
    code, out, _ = run(["example", "1", "--grid-n", "8",
                        "--output-dir", tmp_path / "e1"], capsys)
    assert code == 0 and "[FAIL]" not in out
    code, out, _ = run(["example", "2", "--grid-n", "8",
                        "--output-dir", tmp_path / "e2"], capsys)
    assert code == 0
    assert "candidate optimal at this resolution" in out
    code, out, _ = run(["example", "2", "--grid-n", "16",
                        "--output-dir", tmp_path / "e2b"], capsys)
    assert code == 0
    assert "improving residual cycle exists" in out
    code, out, _ = run(["example", "3", "--grid-n", "8", "--hbar", "2",
                        "--output-dir", tmp_path / "e3"], capsys)
    assert code == 0 and "[FAIL]" not in out


def test_example_float_mode(tmp_path, capsys):
    code, out, _ = run(["example", "1", "--grid-n", "16", "--mode", "float",
                        "--output-dir", tmp_path / "e1f"], capsys)
    assert code == 0 and "[FAIL]" not in out
    doc = json.loads((tmp_path / "e1f" / "result.json").read_text())
    assert doc["mode"] == "float"
    assert doc["objective"] == pytest.approx(0.0205078125)


def test_oracle_compare(tmp_path, capsys):
    code, out, _ = run(["oracle-compare", "--seed", "0",
                        "--output-dir", tmp_path / "oc"], capsys)
    assert code == 0
    assert "agree exactly on 20 instances" in out
    rep = json.loads((tmp_path / "oc" / "oracle_compare.json").read_text())
    assert rep["result"] == "pass" and len(rep["witness"]) == 20


def test_convergence_artifact(tmp_path, capsys):
    code, out, _ = run(["convergence", "--example", "2", "--sizes", "8,16",
                        "--output-dir", tmp_path / "cv"], capsys)
    assert code == 0
    lines = (tmp_path / "cv" / "convergence.csv").read_text().splitlines()
    assert lines[0] == "n,fractional_mass_fraction,objective"
    assert lines[1].startswith("8,") and lines[2].startswith("16,")


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "exit codes" in out
    for token in ("0 success", "2 file", "3 domain", "4 solver", "5 checks"):
        assert token in out
