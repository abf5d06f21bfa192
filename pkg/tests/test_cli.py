import json

import pytest

from src.cli import main


def _lines(text):
    return text.strip().split("\n")


class TestConvertUnits:
    def test_hydrogen_radius(self, capsys):
        assert main(["convert-units", "--r-angstrom", "0.529"]) == 0
        lines = _lines(capsys.readouterr().out)
        assert lines[0].startswith("# exciton-cylinder ")
        assert "command=convert-units" in lines[0]
        assert "units: energy=Ry*, length=a_B*" in lines[0]
        assert lines[1] == "r_angstrom,epsilon,mu,a_B_angstrom,r"
        assert lines[2] == "0.529,1,1,0.529,1"

    def test_file_output_matches_stdout(self, capsys, tmp_path):
        assert main(["convert-units", "--r-angstrom", "1.2", "--epsilon", "2"]) == 0
        printed = capsys.readouterr().out
        target = tmp_path / "units.csv"
        assert main(["convert-units", "--r-angstrom", "1.2", "--epsilon", "2", "--out", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert target.read_text(encoding="utf-8") == printed

    def test_missing_radius(self, capsys):
        assert main(["convert-units"]) == 2

    def test_invalid_material(self):
        assert main(["convert-units", "--r-angstrom", "1", "--mu", "0"]) == 2

    def test_unwritable_output(self, tmp_path):
        target = tmp_path / "missing" / "units.csv"
        assert main(["convert-units", "--r-angstrom", "1", "--out", str(target)]) == 4


class TestConfigFile:
    def test_values_from_file(self, capsys, tmp_path):
        config = tmp_path / "run.env"
        config.write_text("r_angstrom=0.529\nepsilon=2\n", encoding="utf-8")
        assert main(["convert-units", "--config", str(config)]) == 0
        assert _lines(capsys.readouterr().out)[2] == "0.529,2,1,1.058,0.5"

    def test_flags_override_file(self, capsys, tmp_path):
        config = tmp_path / "run.env"
        config.write_text("r-angstrom=0.529\nepsilon=2\n", encoding="utf-8")
        assert main(["convert-units", "--config", str(config), "--epsilon", "1"]) == 0
        assert _lines(capsys.readouterr().out)[2] == "0.529,1,1,0.529,1"

    def test_boolean_key(self, capsys, tmp_path):
        config = tmp_path / "sweep.env"
        config.write_text("alpha=yes\nr_min=0.01\nr_max=0.1\npoints=2\n", encoding="utf-8")
        assert main(["spectrum", "--config", str(config), "--states", "1s"]) == 0
        assert _lines(capsys.readouterr().out)[1] == "r,E_1s,alpha_1s"

    def test_unknown_key(self, tmp_path):
        config = tmp_path / "run.env"
        config.write_text("r_angstrom=1\nwavelength=3\n", encoding="utf-8")
        assert main(["convert-units", "--config", str(config)]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["convert-units", "--config", str(tmp_path / "absent.env")]) == 2


class TestSpectrum:
    ARGS = ["spectrum", "--r-min", "0.01", "--r-max", "0.1", "--points", "3"]

    def test_default_states(self, capsys):
        assert main(self.ARGS) == 0
        lines = _lines(capsys.readouterr().out)
        assert lines[1] == "r,E_1s,E_2p,E_2s,E_3p"
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == 3
        assert rows[0][0] == "0.01" and rows[-1][0] == "0.1"
        assert all(row[2] == "-1" and row[4] == "-0.25" for row in rows)
        assert all(float(row[1]) < -1.0 < float(row[3]) < -0.25 for row in rows)

    def test_alpha_columns(self, capsys):
        assert main(self.ARGS + ["--states", "1s,2s", "--alpha"]) == 0
        assert _lines(capsys.readouterr().out)[1] == "r,E_1s,E_2s,alpha_1s,alpha_2s"

    def test_linear_grid(self, capsys):
        assert main(self.ARGS + ["--no-log", "--states", "2p"]) == 0
        rows = _lines(capsys.readouterr().out)[2:]
        assert [row.split(",")[0] for row in rows] == ["0.01", "0.055", "0.1"]

    def test_deterministic(self, capsys):
        assert main(self.ARGS) == 0
        first = capsys.readouterr().out
        assert main(self.ARGS) == 0
        assert capsys.readouterr().out == first

    @pytest.mark.parametrize("states", ["1p", "2s,zz"])
    def test_invalid_states(self, states):
        assert main(self.ARGS + ["--states", states]) == 2

    def test_invalid_range(self):
        assert main(["spectrum", "--r-min", "0.5", "--r-max", "0.1"]) == 2

    def test_unknown_log_level(self):
        assert main(self.ARGS + ["--log-level", "CHATTY"]) == 2


class TestPotential:
    def test_table(self, capsys):
        argv = ["potential", "--r", "0.1", "--x-min", "0.5", "--x-max", "2", "--n", "4"]
        assert main(argv) == 0
        lines = _lines(capsys.readouterr().out)
        assert lines[1] == "x,v_eff,v_eff_quadrature,rel_diff"
        rows = [[float(v) for v in line.split(",")] for line in lines[2:]]
        assert [row[0] for row in rows] == pytest.approx([0.5, 1.0, 1.5, 2.0])
        assert all(row[3] < 1e-8 for row in rows)

    def test_missing_radius(self):
        assert main(["potential"]) == 2

    def test_grid_through_origin(self):
        assert main(["potential", "--r", "0.1", "--x-min", "-1", "--x-max", "1", "--n", "3"]) == 2

    def test_too_few_panels(self):
        assert main(["potential", "--r", "0.1", "--quad-panels", "4"]) == 2


def test_unknown_command(capsys):
    assert main(["teleport"]) == 2


@pytest.mark.slow
def test_variational_json(capsys):
    assert main(["variational", "--r", "0.5", "--state", "2p"]) == 0
    document = json.loads(capsys.readouterr().out)
    assert list(document) == ["r", "state", "k", "q", "energy", "K", "V", "N", "iterations", "converged"]
    assert document["state"] == "2p"
    assert document["converged"] is True
    assert -1.0 < document["energy"] < -4.0 / 9.0
    assert document["energy"] == pytest.approx((document["K"] - document["V"]) / document["N"])


def test_variational_needs_both_seeds():
    assert main(["variational", "--r", "0.5", "--k0", "1.0"]) == 2


@pytest.mark.slow
def test_compare_header_and_note(capsys):
    assert main(["compare", "--r-min", "0.05", "--r-max", "0.1", "--points", "2"]) == 0
    lines = _lines(capsys.readouterr().out)
    assert "note: E_var_1s uses the reconstructed even trial" in lines[0]
    assert lines[1] == "r,E_model_1s,E_var_1s,E_model_2p,E_var_2p,E_model_2s"
    assert len(lines) == 4


@pytest.mark.slow
def test_compare_with_oracle_columns(capsys):
    argv = ["compare", "--r-min", "0.05", "--r-max", "0.1", "--points", "2", "--oracle"]
    assert main(argv + ["--oracle-points", "2000", "--oracle-length", "20"]) == 0
    lines = _lines(capsys.readouterr().out)
    assert lines[1] == "r,E_model_1s,E_var_1s,E_model_2p,E_var_2p,E_model_2s,E_fd_odd,E_fd_even"
    assert len(lines) == 4


@pytest.mark.slow
def test_variational_reruns_are_byte_identical(capsys):
    argv = ["variational", "--r", "0.5", "--state", "2p"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
