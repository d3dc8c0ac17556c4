import json

import pytest

from abelsweep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestExitCodes:
    def test_success(self, capsys):
        code, out, _ = run(capsys, "matrix", "--b", "2", "--s", "1", "--N", "3")
        assert code == 0 and out

    def test_root_of_unity_is_domain_error(self, capsys):
        code, _, err = run(capsys, "solve", "--b", "1", "--s", "1", "--N", "3")
        assert code == 2
        assert "root of unity" in err

    def test_zero_shift_is_domain_error(self, capsys):
        code, _, err = run(capsys, "solve", "--b", "2", "--s", "0", "--N", "3")
        assert code == 2
        assert "nonzero" in err

    def test_singular_system_is_domain_error(self, capsys, tmp_path):
        series = tmp_path / "ident.json"
        series.write_text(json.dumps({"center": 0, "coeffs": [0, 1, 0, 0]}))
        code, _, err = run(
            capsys, "solve", "--series", str(series), "--N", "3", "--precision", "exact"
        )
        assert code == 2
        assert "singular" in err

    def test_bad_flag_is_config_error(self, capsys):
        code, _, _ = run(capsys, "solve", "--nope", "3")
        assert code == 1

    def test_bad_literal_is_config_error(self, capsys):
        code, _, _ = run(capsys, "solve", "--b", "zebra", "--s", "1", "--N", "2")
        assert code == 1

    def test_missing_file_is_io_error(self, capsys):
        code, _, _ = run(capsys, "solve", "--series", "/nonexistent.json", "--N", "2")
        assert code == 1


class TestMatrix:
    def test_paper_display_values(self, capsys):
        code, out, _ = run(
            capsys, "matrix", "--b", "2", "--s", "1", "--N", "4", "--precision", "exact"
        )
        assert code == 0
        rows = [line.split(",") for line in out.strip().split("\n")[1:]]
        assert rows[0] == ["1", "1", "1", "1", "1"]
        assert rows[1] == ["0", "2", "4", "6", "8"]
        assert rows[3] == ["0", "0", "0", "8", "32"]

    def test_identity_pattern_allowed(self, capsys):
        # dumping the matrix never divides by 1 - b**k, so b=1 is fine here
        code, out, _ = run(
            capsys, "matrix", "--b", "1", "--s", "1", "--N", "3", "--precision", "exact"
        )
        assert code == 0
        rows = [line.split(",") for line in out.strip().split("\n")[1:]]
        assert rows == [["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"]]

    def test_system_dump(self, capsys):
        code, out, _ = run(
            capsys,
            "matrix", "--b", "2", "--s", "1", "--N", "2",
            "--system", "--precision", "exact",
        )
        assert code == 0
        rows = [line.split(",") for line in out.strip().split("\n")[1:]]
        assert rows == [["1", "1", "1"], ["1", "4", "0"]]


class TestSolveAndAffine:
    def test_affine_all_methods_agree(self, capsys):
        code, out, _ = run(
            capsys, "affine", "--b", "2", "--s", "1", "--n", "2", "--method", "all"
        )
        assert code == 0
        rows = [line.split(",") for line in out.strip().split("\n")[1:]]
        assert rows[0] == ["1", "4/3", "4/3", "4/3"]
        assert rows[1] == ["2", "-1/3", "-1/3", "-1/3"]

    def test_solve_exact_json(self, capsys):
        code, out, _ = run(
            capsys,
            "solve", "--b", "2", "--s", "1", "--N", "2",
            "--precision", "exact", "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["coefficients"] == ["4/3", "-1/3"]

    def test_series_file_input(self, capsys, tmp_path):
        series = tmp_path / "f.json"
        series.write_text(json.dumps({"center": 0, "coeffs": ["1", "2"]}))
        code, out, _ = run(
            capsys, "solve", "--series", str(series), "--N", "2", "--precision", "exact"
        )
        assert code == 0
        assert out.strip().split("\n")[1:] == ["1,4/3", "2,-1/3"]


class TestSweep:
    def test_json_schema(self, capsys):
        code, out, _ = run(
            capsys, "sweep", "--b", "2", "--s", "1", "--Ns", "1:6", "--precision", "exact"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["Ns"] == [1, 2, 3, 4, 5, 6]
        assert doc["coefficients"]["1"]["values"][:2] == ["1", "4/3"]
        assert "verdict" in doc["coefficients"]["1"]
        assert doc["config"]["window"] == 3

    def test_csv_long_format(self, capsys):
        code, out, _ = run(
            capsys,
            "sweep", "--b", "2", "--s", "1", "--Ns", "1,2,3",
            "--precision", "exact", "--format", "csv",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "index,N,value,verdict"
        assert lines[1].startswith("1,1,1,")


class TestReports:
    def test_logapprox_columns(self, capsys):
        code, out, _ = run(
            capsys, "logapprox", "--b", "1/2", "--n", "20", "--xs", "0.5,0.25"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "n,x,approx,reference_log,abs_error"
        assert len(lines) == 3

    def test_invariance_json(self, capsys):
        code, out, _ = run(
            capsys,
            "invariance", "--b", "1/2", "--s1", "1", "--s2", "2",
            "--n", "50", "--xs", "0.3,0.5,0.7",
        )
        assert code == 0
        doc = json.loads(out)
        assert abs(float(doc["median_gap"]) - 1) < 1e-2

    def test_iterate_triples(self, capsys):
        code, out, _ = run(
            capsys, "iterate", "--b", "2", "--s", "1", "--t", "1", "--z", "3"
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,z,value"
        t, z, v = lines[1].split(",")
        assert (t, z) == ("1", "3")
        assert abs(float(v) - 6) < 1e-6

    def test_iterate_polynomial_requires_bracket(self, capsys):
        code, _, err = run(
            capsys,
            "iterate", "--b", "1/2", "--s", "1", "--t", "1", "--z", "0.3", "--n", "50",
        )
        assert code == 1
        assert "bracket" in err


class TestExploratory:
    def test_explore_exp_runs_clean(self, capsys):
        code, out, _ = run(
            capsys, "explore-exp", "--Ns", "1:8", "--precision", "bits:256"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["Ns"] == list(range(1, 9))
        for entry in doc["coefficients"].values():
            assert entry["verdict"]["kind"] != "singular-at"
        # the 1x1 truncation of the exponential system solves to exactly 1
        assert float(doc["coefficients"]["1"]["values"][0]) == 1.0

    def test_explore_exp_n_max(self, capsys):
        code, out, _ = run(capsys, "explore-exp", "--N-max", "5")
        assert code == 0
        assert json.loads(out)["Ns"] == [1, 2, 3, 4, 5]

    def test_explore_exp_flag_conflict(self, capsys):
        code, _, err = run(capsys, "explore-exp", "--N-max", "5", "--Ns", "1:3")
        assert code == 1 and "exactly one" in err

    def test_explore_bgt1_reports_errors(self, capsys):
        code, out, _ = run(capsys, "explore-bgt1", "--b", "2", "--n", "50")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "n,x,approx,reference_log,abs_error"
        assert len(lines) > 5


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("sweep", "--b", "2", "--s", "1", "--Ns", "1:8"),
            ("logapprox", "--b", "1/2", "--n", "60", "--xs", "0.3,0.7"),
            ("matrix", "--b", "3", "--s", "2", "--N", "5"),
            ("explore-exp", "--Ns", "1:6"),
        ],
    )
    def test_byte_identical_reruns(self, capsys, argv):
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_out_file_matches_stdout(self, capsys, tmp_path):
        target = tmp_path / "report.csv"
        code, _, _ = run(
            capsys,
            "matrix", "--b", "2", "--s", "1", "--N", "3", "--out", str(target),
        )
        code2, out, _ = run(capsys, "matrix", "--b", "2", "--s", "1", "--N", "3")
        assert code == code2 == 0
        assert target.read_text() == out
