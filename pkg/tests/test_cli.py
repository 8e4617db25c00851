import pytest

from wallbot.cli import cli


@pytest.fixture()
def weights_file(tmp_path):
    out = tmp_path / "w.txt"
    assert cli(["train", "-o", str(out)]) == 0
    return out


class TestTrain:
    def test_writes_weight_file(self, weights_file):
        text = weights_file.read_text()
        assert text.startswith("ANNV1 5 5 4\n")

    def test_same_seed_twice_byte_identical(self, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        assert cli(["train", "--seed", "42", "-o", str(a)]) == 0
        assert cli(["train", "--seed", "42", "-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_nonconvergence_is_diagnosed(self, tmp_path, capsys):
        rc = cli(["train", "--max-epochs", "3", "-o", str(tmp_path / "w.txt")])
        assert rc == 1
        assert "no convergence" in capsys.readouterr().err

    def test_external_dataset(self, tmp_path):
        data = tmp_path / "data.txt"
        data.write_text("1 0 0 0 1 straight\n1 1 1 1 1 stop\n")
        rc = cli(["train", "--data", str(data), "-o", str(tmp_path / "w.txt")])
        assert rc == 0

    def test_bad_dataset_path(self, tmp_path, capsys):
        rc = cli(["train", "--data", str(tmp_path / "nope.txt"), "-o", str(tmp_path / "w.txt")])
        assert rc == 1
        assert "error" in capsys.readouterr().err

    def test_unwritable_output_diagnosed(self, tmp_path, capsys):
        rc = cli(["train", "-o", str(tmp_path / "missing_dir" / "w.txt")])
        assert rc == 1
        assert "cannot write" in capsys.readouterr().err


class TestVerify:
    def test_reports_14_of_14(self, weights_file, capsys):
        assert cli(["verify", str(weights_file)]) == 0
        out = capsys.readouterr().out
        assert "14/14 rows pass" in out

    def test_fixed_agreement_reported(self, weights_file, tmp_path, capsys):
        fixed = tmp_path / "q.txt"
        assert cli(["export-fixed", str(weights_file), "-o", str(fixed)]) == 0
        assert cli(["verify", str(weights_file), "--fixed", str(fixed)]) == 0
        out = capsys.readouterr().out
        assert "32/32 inputs agree" in out

    def test_untrained_weights_fail_verification(self, tmp_path, capsys):
        import numpy as np

        from wallbot.ann import Network, export_weights_float

        zero = Network(np.zeros((5, 3)), np.zeros(3), np.zeros((3, 4)), np.zeros(4))
        w = tmp_path / "zero.txt"
        w.write_text(export_weights_float(zero))
        assert cli(["verify", str(w)]) == 1
        assert "0/14 rows pass" in capsys.readouterr().out

    def test_mismatched_fixed_file_fails(self, weights_file, tmp_path, capsys):
        # fixed-point file quantized from a different network: disagreements
        # must be listed and the exit code nonzero
        other = tmp_path / "other.txt"
        assert cli(["train", "--seed", "1", "-o", str(other)]) == 0
        fixed = tmp_path / "other_q.txt"
        assert cli(["export-fixed", str(other), "-o", str(fixed)]) == 0
        rc = cli(["verify", str(weights_file), "--fixed", str(fixed)])
        out = capsys.readouterr().out
        assert rc == 1
        assert "mismatch" in out


class TestExportFixed:
    def test_writes_fixed_file(self, weights_file, tmp_path):
        out = tmp_path / "q.txt"
        assert cli(["export-fixed", str(weights_file), "--frac-bits", "12", "-o", str(out)]) == 0
        assert out.read_text().startswith("ANNQ1 5 5 4 12\n")

    def test_overflow_diagnosed(self, weights_file, tmp_path, capsys):
        rc = cli(["export-fixed", str(weights_file), "--frac-bits", "14", "-o", str(tmp_path / "q.txt")])
        assert rc == 1
        assert "frac_bits" in capsys.readouterr().err


class TestRun:
    def test_reference_run_writes_outputs(self, weights_file, tmp_path, capsys):
        trace = tmp_path / "t.csv"
        svg = tmp_path / "p.svg"
        rc = cli(["run", "reference", str(weights_file), "--trace", str(trace), "--svg", str(svg)])
        assert rc == 0
        assert "halt=goal" in capsys.readouterr().out
        assert trace.exists() and svg.exists()

    def test_scenario_file_path(self, weights_file, tmp_path):
        scn = tmp_path / "s.scn"
        scn.write_text("WALL 8 -10 8 10\nWALL -5 5 8 5\nWALL -5 -5 8 -5\nSTART 0 0 0\n")
        assert cli(["run", str(scn), str(weights_file)]) == 0

    def test_deterministic_outputs(self, weights_file, tmp_path):
        t1, t2 = tmp_path / "t1.csv", tmp_path / "t2.csv"
        s1, s2 = tmp_path / "s1.svg", tmp_path / "s2.svg"
        assert cli(["run", "reference", str(weights_file), "--trace", str(t1), "--svg", str(s1)]) == 0
        assert cli(["run", "reference", str(weights_file), "--trace", str(t2), "--svg", str(s2)]) == 0
        assert t1.read_bytes() == t2.read_bytes()
        assert s1.read_bytes() == s2.read_bytes()

    def test_missing_scenario_diagnosed(self, weights_file, tmp_path, capsys):
        rc = cli(["run", str(tmp_path / "nope.scn"), str(weights_file)])
        assert rc == 1
        assert "error" in capsys.readouterr().err


class TestUsage:
    def test_no_command_is_usage_error(self):
        assert cli([]) == 2

    def test_unknown_command_is_usage_error(self):
        assert cli(["fly"]) == 2

    def test_help_exits_zero(self):
        assert cli(["--help"]) == 0
