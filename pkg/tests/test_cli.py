"""CLI tests: exit codes, frozen interval values, report determinism."""

import json

import pytest

from pivotboot.cli import main
from pivotboot.jsonio import dumps


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def data_file(tmp_path):
    path = tmp_path / "data.txt"
    path.write_text("1\n0\n")
    return str(path)


class TestCiCommand:
    def test_population_interval_matches_hand_value(self, capsys, data_file):
        # both non-degenerate draws on two points give the same interval
        code, out, _ = run_cli(
            capsys, "ci", data_file, "--method", "population",
            "--alpha", "0.1", "--m", "2", "--seed", "5", "--timestamp", "T0",
        )
        assert code == 0
        report = json.loads(out)
        assert report["interval"]["lo"] == pytest.approx(-0.081542, abs=1e-5)
        assert report["interval"]["hi"] == pytest.approx(1.081542, abs=1e-5)
        assert report["manifest"]["command"] == "ci"
        assert report["manifest"]["seed"] == 5

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys, "ci", str(tmp_path / "nope.txt"), "--method", "population",
            "--seed", "1",
        )
        assert code == 2
        assert "nope.txt" in err

    def test_unparseable_file_exits_2(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1\nbanana\n")
        code, _, err = run_cli(capsys, "ci", str(path), "--method", "population",
                               "--seed", "1")
        assert code == 2
        assert "banana" in err

    def test_crlf_and_comments_accepted(self, capsys, tmp_path):
        path = tmp_path / "win.txt"
        path.write_bytes(b"# comment\r\n1\r\n0\r\n\r\n")
        code, out, _ = run_cli(capsys, "ci", str(path), "--method", "population",
                               "--m", "2", "--seed", "5", "--timestamp", "T0")
        assert code == 0
        assert json.loads(out)["manifest"]["config"]["n"] == 2

    def test_degenerate_weights_file_exits_3(self, capsys, data_file, tmp_path):
        wfile = tmp_path / "w.txt"
        wfile.write_text("1\n1\n")
        code, _, err = run_cli(capsys, "ci", data_file, "--method", "population",
                               "--weights-file", str(wfile), "--seed", "1")
        assert code == 3
        assert "degenerate" in err

    def test_weights_file_drives_interval(self, capsys, data_file, tmp_path):
        wfile = tmp_path / "w.txt"
        wfile.write_text("2\n0\n")
        code, out, _ = run_cli(capsys, "ci", data_file, "--method", "sample",
                               "--alpha", "0.1", "--weights-file", str(wfile),
                               "--seed", "1", "--timestamp", "T0")
        assert code == 0
        report = json.loads(out)
        assert report["interval"]["lo"] == pytest.approx(0.418458, abs=1e-5)
        assert report["interval"]["hi"] == pytest.approx(1.581542, abs=1e-5)

    def test_alpha_nesting(self, capsys, data_file):
        intervals = {}
        for alpha in ("0.1", "0.5"):
            _, out, _ = run_cli(capsys, "ci", data_file, "--method", "population",
                                "--alpha", alpha, "--m", "2", "--seed", "5",
                                "--timestamp", "T0")
            intervals[alpha] = json.loads(out)["interval"]
        width = lambda iv: iv["hi"] - iv["lo"]
        assert width(intervals["0.5"]) < width(intervals["0.1"])

    def test_ecdf_method_requires_x(self, capsys, tmp_path):
        path = tmp_path / "d.txt"
        path.write_text("1\n2\n3\n")
        code, _, err = run_cli(capsys, "ci", str(path), "--method", "ecdf",
                               "--seed", "1")
        assert code == 2
        assert "--x" in err

    def test_cdf_method_runs(self, capsys, tmp_path):
        path = tmp_path / "d.txt"
        path.write_text("1\n2\n3\n4\n")
        code, out, _ = run_cli(capsys, "ci", str(path), "--method", "cdf",
                               "--x", "2.5", "--seed", "3", "--timestamp", "T0")
        assert code == 0
        interval = json.loads(out)["interval"]
        assert 0.0 <= interval["lo"] <= interval["hi"] <= 1.0


class TestTableCommand:
    def test_invalid_which_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["table", "--which", "3", "--model", "poisson1", "--n", "20"])
        assert exc.value.code == 2
        capsys.readouterr()

    def test_invalid_model_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "table", "--which", "1", "--model", "cauchy",
                               "--n", "20", "--seed", "1")
        assert code == 2
        assert "cauchy" in err

    def test_json_fields_present(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--which", "1", "--model", "poisson1", "--n", "12",
            "--outer", "6", "--inner", "6", "--seed", "3", "--timestamp", "T0",
        )
        assert code == 0
        report = json.loads(out)
        assert set(report["report"]["results"]) == {"emp_G_star", "emp_T"}
        assert report["manifest"]["config"]["threshold"] == 1.644854

    def test_table2_has_three_results(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--which", "2", "--model", "poisson1", "--n", "10",
            "--outer", "4", "--inner", "4", "--B", "3", "--seed", "3",
            "--timestamp", "T0",
        )
        assert code == 0
        report = json.loads(out)
        assert set(report["report"]["results"]) == {"emp_G_star", "emp_T", "emp_boot"}
        assert report["manifest"]["config"]["nominal"] == 0.9000169

    def test_byte_identical_across_threads_and_reruns(self, capsys):
        argv = ["table", "--which", "2", "--model", "exponential1", "--n", "10",
                "--outer", "8", "--inner", "8", "--B", "3", "--seed", "11",
                "--timestamp", "T0"]
        outputs = []
        for threads in ("1", "8", "1"):
            code, out, _ = run_cli(capsys, *argv, "--threads", threads)
            assert code == 0
            outputs.append(out)
        assert outputs[0] == outputs[1] == outputs[2]

    def test_text_and_json_carry_identical_numbers(self, capsys):
        argv = ["table", "--which", "1", "--model", "poisson1", "--n", "10",
                "--outer", "5", "--inner", "5", "--seed", "9", "--timestamp", "T0"]
        _, json_out, _ = run_cli(capsys, *argv)
        _, text_out, _ = run_cli(capsys, *argv, "--text")
        results = json.loads(json_out)["report"]["results"]
        header, row = text_out.strip().splitlines()
        columns = header.split()
        values = row.split()
        for stat in ("emp_G_star", "emp_T"):
            rendered = values[columns.index(stat)]
            assert float(rendered) == float(results[stat])
            assert rendered == repr(float(results[stat]))


class TestYdistCommand:
    def test_b9_output(self, capsys):
        code, out, _ = run_cli(capsys, "ydist", "--B", "9", "--alpha", "0.1",
                               "--seed", "1", "--timestamp", "T0")
        assert code == 0
        report = json.loads(out)
        assert report["y_quantile"] == 8
        assert report["nominal_exact"] == pytest.approx(0.9)
        assert report["nominal_genz_reference"] == pytest.approx(0.9000169)
        assert all(abs(p - 0.1) < 1e-9 for p in report["pmf_quadrature"])
        assert report["pmf_closed_form"] == pytest.approx([0.1] * 10)

    def test_b2_pmf(self, capsys):
        code, out, _ = run_cli(capsys, "ydist", "--B", "2", "--seed", "1",
                               "--timestamp", "T0")
        assert code == 0
        report = json.loads(out)
        assert report["pmf_closed_form"] == pytest.approx([1 / 3] * 3)

    def test_b1_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "ydist", "--B", "1", "--seed", "1")
        assert code == 2
        assert "B" in err


class TestBoundCommand:
    def test_matches_library_bitwise(self, capsys):
        from pivotboot.bounds import BoundParams, bound_terms, delta_n

        code, out, _ = run_cli(
            capsys, "bound", "--n", "100", "--m", "100", "--delta", "0.5",
            "--eps", "0.5", "--eps1", "0.1", "--eps2", "0.1", "--ratio", "1",
            "--seed", "1", "--timestamp", "T0",
        )
        assert code == 0
        report = json.loads(out)
        p = BoundParams(n=100, m=100, delta=0.5, eps=0.5, eps1=0.1, eps2=0.1,
                        third_abs_moment_ratio=1.0)
        first, second = bound_terms(p)
        assert report["delta_n"] == delta_n(p)
        assert report["first_term"] == first
        assert report["second_term"] == second
        assert report["total"] == first + second

    def test_inadmissible_names_inequality(self, capsys):
        code, _, err = run_cli(
            capsys, "bound", "--n", "10", "--m", "10", "--delta", "0.1",
            "--eps", "0.5", "--eps1", "0.4", "--eps2", "0.1", "--ratio", "1",
            "--seed", "1",
        )
        assert code == 2
        assert "delta > (eps1/eps)^2 + p_var_dev + eps2" in err

    def test_singular_n_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, "bound", "--n", "1", "--m", "10", "--delta", "0.5",
            "--eps", "0.5", "--eps1", "0.1", "--eps2", "0.1", "--ratio", "1",
            "--seed", "1",
        )
        assert code == 2

    def test_rate_kind(self, capsys):
        code, out, _ = run_cli(capsys, "bound", "--kind", "GStarRate",
                               "--n", "100", "--m", "100", "--seed", "1",
                               "--timestamp", "T0")
        assert code == 0
        assert json.loads(out)["rate"] == pytest.approx(0.01)

    def test_rate_kind_spellings(self, capsys):
        for spelling in ("g_star_rate", "TDoubleStarRate", "t-double-star"):
            code, out, _ = run_cli(capsys, "bound", "--kind", spelling,
                                   "--n", "10", "--m", "4", "--seed", "1",
                                   "--timestamp", "T0")
            assert code == 0
        assert json.loads(out)["rate"] == pytest.approx(max(4 / 100, 1 / 4, 10 / 16))

    def test_unknown_rate_kind(self, capsys):
        code, _, err = run_cli(capsys, "bound", "--kind", "Bogus", "--n", "5",
                               "--m", "5", "--seed", "1")
        assert code == 2


class TestWeightsCommand:
    def test_draw_is_reproducible(self, capsys):
        a = run_cli(capsys, "weights", "--n", "6", "--m", "9", "--seed", "4",
                    "--timestamp", "T0")
        b = run_cli(capsys, "weights", "--n", "6", "--m", "9", "--seed", "4",
                    "--timestamp", "T0")
        assert a == b
        report = json.loads(a[1])
        assert sum(report["counts"]) == 9
        assert report["scheme"] == "multinomial"


class TestManifestAndSerialization:
    def test_env_seed_fallback(self, capsys, data_file, monkeypatch):
        monkeypatch.setenv("PIVOTBOOT_SEED", "987")
        code, out, _ = run_cli(capsys, "ci", data_file, "--method", "population",
                               "--m", "2", "--timestamp", "T0")
        assert code == 0
        assert json.loads(out)["manifest"]["seed"] == 987

    def test_generated_seed_is_reported(self, capsys, data_file, monkeypatch):
        monkeypatch.delenv("PIVOTBOOT_SEED", raising=False)
        code, out, _ = run_cli(capsys, "ci", data_file, "--method", "population",
                               "--m", "2", "--timestamp", "T0")
        assert code == 0
        assert isinstance(json.loads(out)["manifest"]["seed"], int)

    def test_json_roundtrip_is_byte_identical(self, capsys):
        code, out, _ = run_cli(capsys, "ydist", "--B", "5", "--alpha", "0.2",
                               "--seed", "1", "--timestamp", "T0")
        assert code == 0
        text = out.rstrip("\n")
        assert dumps(json.loads(text)) == text


class TestMalformedInputs:
    def test_bad_alpha_exits_2(self, capsys, data_file):
        code, _, err = run_cli(capsys, "ci", data_file, "--method", "population",
                               "--alpha", "2.0", "--m", "2", "--seed", "1")
        assert code == 2
        assert "alpha" in err

    def test_negative_n_weights_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "weights", "--n", "-3", "--m", "5",
                               "--seed", "1")
        assert code == 2
