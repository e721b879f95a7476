import json

import pytest

from harbourne.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEnumerate:
    def test_four_lines_four_rows(self, capsys):
        code, out, _ = run(capsys, "enumerate", "-d", "4")
        assert code == 0
        assert len(out.strip().splitlines()) == 4

    def test_two_lines_single_row(self, capsys):
        code, out, _ = run(capsys, "enumerate", "-d", "2")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 1
        assert "q = 0" in lines[0]

    def test_below_bound(self, capsys):
        code, out, _ = run(capsys, "enumerate", "-d", "10", "--below=-34/15")
        assert code == 0
        assert "0,9,3,0,0,0,0,0,0" in out

    def test_bad_degree_usage_error(self, capsys):
        code, _, err = run(capsys, "enumerate", "-d", "1")
        assert code == 2
        assert "error" in err

    def test_json_format_versioned(self, capsys):
        code, out, _ = run(capsys, "enumerate", "-d", "3", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["schema_version"] == 1
        assert len(data["tvectors"]) == 2


class TestFilter:
    def test_passing_vector(self, capsys):
        code, out, _ = run(capsys, "filter", "-d", "9", "-t", "0,12,0,0,0,0,0,0")
        assert code == 0
        assert json.loads(out)["status"] == "passed"

    def test_excluded_vector(self, capsys):
        code, out, _ = run(capsys, "filter", "-d", "5", "-t", "1,3,0,0")
        assert code == 1
        assert json.loads(out)["criterion"] == "multiplicity_sum"

    def test_complex_mode(self, capsys):
        code, out, _ = run(capsys, "filter", "-d", "7", "-t", "0,7,0,0,0,0", "--mode", "complex")
        assert code == 1
        assert json.loads(out)["criterion"] == "hirzebruch"


class TestFeasible:
    def test_infeasible_exit_one(self, capsys):
        code, _, err = run(capsys, "feasible", "-d", "6", "-t", "0,5,0,0,0")
        assert code == 1
        assert "infeasible" in err

    def test_fano_feasible_with_witness(self, capsys):
        code, out, _ = run(capsys, "feasible", "-d", "7", "-t", "0,7,0,0,0,0")
        assert code == 0
        witness = json.loads(out)
        assert witness["d"] == 7
        assert len(witness["points"]) == 7

    def test_d10_case_infeasible(self, capsys):
        code, _, _ = run(capsys, "feasible", "-d", "10", "-t", "0,1,7,0,0,0,0,0,0")
        assert code == 1

    def test_identity_violation_reports_imbalance(self, capsys):
        code, _, err = run(capsys, "feasible", "-d", "6", "-t", "1,5,0,0,0")
        assert code == 2
        assert "pair-count identity" in err

    def test_budget_inconclusive_exit_three(self, capsys):
        code, _, err = run(capsys, "feasible", "-d", "9", "-t", "0,12,0,0,0,0,0,0", "--budget", "2")
        assert code == 3
        assert "inconclusive" in err

    def test_env_budget_override(self, capsys, monkeypatch):
        monkeypatch.setenv("HARB_NODE_BUDGET", "2")
        code, _, _ = run(capsys, "feasible", "-d", "9", "-t", "0,12,0,0,0,0,0,0")
        assert code == 3

    def test_witness_file_output(self, capsys, tmp_path):
        out_file = tmp_path / "witness.json"
        code, _, _ = run(capsys, "feasible", "-d", "3", "-t", "0,1", "--out", str(out_file))
        assert code == 0
        assert json.loads(out_file.read_text())["points"] == [[0, 1, 2]]


class TestRealize:
    def test_fano_over_f2(self, capsys, tmp_path):
        out_file = tmp_path / "fano.json"
        code, _, _ = run(
            capsys, "realize", "-d", "7", "-t", "0,7,0,0,0,0", "--field", "f2", "--out", str(out_file)
        )
        assert code == 0
        cert = json.loads(out_file.read_text())
        assert cert["field"] == {"kind": "prime", "p": 2}
        assert len(cert["lines"]) == 7

    def test_fano_over_f3_exhausted(self, capsys):
        code, _, err = run(capsys, "realize", "-d", "7", "-t", "0,7,0,0,0,0", "--field", "f3")
        assert code == 1
        assert "exhausted" in err

    def test_d9_over_f3(self, capsys):
        code, out, _ = run(capsys, "realize", "-d", "9", "-t", "0,12,0,0,0,0,0,0", "--field", "f3")
        assert code == 0
        assert json.loads(out)["claimed_tvector"] == "0,12,0,0,0,0,0,0"

    def test_too_many_lines_usage_error(self, capsys):
        code, _, _ = run(capsys, "realize", "-d", "8", "-t", "4,8,0,0,0,0,0", "--field", "f2")
        assert code == 2

    def test_unsupported_field(self, capsys):
        code, _, _ = run(capsys, "realize", "-d", "3", "-t", "3,0", "--field", "f4")
        assert code == 2


class TestVerify:
    def test_realize_then_verify(self, capsys, tmp_path):
        out_file = tmp_path / "cert.json"
        run(capsys, "realize", "-d", "9", "-t", "0,12,0,0,0,0,0,0", "--field", "f3",
            "--out", str(out_file))
        code, out, _ = run(capsys, "verify", str(out_file))
        assert code == 0
        assert "T-vector: 0,12,0,0,0,0,0,0" in out
        assert "-9/4" in out

    def test_builtin_export_verifies(self, capsys, tmp_path):
        from harbourne.pipeline import builtin_certificates

        cert = builtin_certificates().get("dual-hesse-plus-line")
        path = tmp_path / "dhpl.json"
        path.write_text(json.dumps(cert.to_json()))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 0
        assert "-34/15" in out

    def test_corrupted_certificate_fails(self, capsys, tmp_path):
        from harbourne.pipeline import builtin_certificates

        data = builtin_certificates().get("fano-f2").to_json()
        data["lines"][1] = data["lines"][0]  # duplicate line
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(data))
        code, _, err = run(capsys, "verify", str(path))
        assert code == 1
        assert "failed" in err

    def test_claimed_mismatch_fails(self, capsys, tmp_path):
        from harbourne.pipeline import builtin_certificates

        data = builtin_certificates().get("fano-f2").to_json()
        data["claimed_tvector"] = "21,0,0,0,0,0"
        path = tmp_path / "mismatch.json"
        path.write_text(json.dumps(data))
        code, _, _ = run(capsys, "verify", str(path))
        assert code == 1

    def test_missing_file_usage_error(self, capsys):
        code, _, _ = run(capsys, "verify", "/nonexistent/cert.json")
        assert code == 2

    def test_pg23_minus_pencil3(self, capsys, tmp_path):
        from harbourne.pipeline import builtin_certificates

        cert = builtin_certificates().get("pg23-minus-pencil3")
        path = tmp_path / "p3.json"
        path.write_text(json.dumps(cert.to_json()))
        code, out, _ = run(capsys, "verify", str(path))
        assert code == 0
        assert "T-vector: 0,9,3,0,0,0,0,0,0" in out
        assert "-29/12" in out


class TestTable:
    def test_table_to_five(self, capsys):
        code, out, _ = run(capsys, "table", "--max-d", "5")
        assert code == 0
        for value in ("0", "-1", "-4/3", "-3/2"):
            assert value in out

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "table", "--max-d", "4", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["schema_version"] == 1
        assert [r["value"] for r in data["rows"]] == ["0", "-1", "-4/3"]

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "table", "--max-d", "3", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == "d,value,decimal,witness,integrity_ok"

    def test_audit_flag(self, capsys):
        code, out, _ = run(capsys, "table", "--max-d", "4", "--audit")
        assert code == 0
        assert "6,0,0" in out

    def test_max_d_validated(self, capsys):
        code, _, _ = run(capsys, "table", "--max-d", "11")
        assert code == 2

    def test_starved_budget_is_integrity_error(self, capsys):
        code, _, err = run(capsys, "table", "--max-d", "2", "--budget", "0")
        assert code == 4
        assert "integrity" in err

    def test_deterministic_output(self, capsys):
        _, first, _ = run(capsys, "table", "--max-d", "6", "--audit", "--format", "json")
        _, second, _ = run(capsys, "table", "--max-d", "6", "--audit", "--format", "json")
        assert first == second
