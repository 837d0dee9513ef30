"""CLI integration: subcommands, exit codes, and text/structured mirroring."""

import json

import pytest

from submult.cli import main
from submult.properties import PropertyReport


@pytest.fixture()
def h3_file(tmp_path):
    path = tmp_path / "h3.json"
    assert main(["construct", "heisenberg", "--p", "3", "-o", str(path)]) == 0
    return path


@pytest.fixture()
def w3_file(tmp_path):
    path = tmp_path / "w3.json"
    assert main(["construct", "wreath_cp_cp", "--p", "3", "-o", str(path)]) == 0
    return path


@pytest.fixture()
def b321_file(tmp_path):
    path = tmp_path / "b321.json"
    assert main(["construct", "basic", "--p", "3", "--c", "2", "--e", "1",
                 "-o", str(path)]) == 0
    return path


class TestConstruct:
    def test_heisenberg_file_shape(self, h3_file):
        data = json.loads(h3_file.read_text())
        assert data["family"] == "heisenberg"
        assert data["carrier"] == "monomial"
        assert len(data["generators"]) == 2
        assert all(g["n"] == 3 for g in data["generators"])

    def test_basic_is_affine(self, b321_file):
        data = json.loads(b321_file.read_text())
        assert data["carrier"] == "affine"
        assert data["generators"][0] == {"v": [1, 0], "t": 0}

    def test_cyclic_one_by_one(self, tmp_path):
        path = tmp_path / "c9.json"
        assert main(["construct", "cyclic", "--m", "9", "-o", str(path)]) == 0
        data = json.loads(path.read_text())
        assert data["generators"] == [
            {"n": 1, "perm": [0], "entries": [{"num": 1, "den": 9}]}]

    def test_idempotent(self, tmp_path):
        path = tmp_path / "q8.json"
        assert main(["construct", "quaternion8", "-o", str(path)]) == 0
        first = path.read_text()
        assert main(["construct", "quaternion8", "-o", str(path)]) == 0
        assert path.read_text() == first

    def test_diagonal_abelian(self, tmp_path):
        path = tmp_path / "d.json"
        assert main(["construct", "diagonal_abelian", "--m", "3",
                     "--vector", "1,2,0", "--vector", "0,1,2",
                     "-o", str(path)]) == 0

    def test_direct_product_of_files(self, tmp_path, h3_file):
        c9 = tmp_path / "c9.json"
        main(["construct", "cyclic", "--m", "9", "-o", str(c9)])
        out = tmp_path / "prod.json"
        assert main(["construct", "direct_product", "--factor", str(h3_file),
                     "--factor", str(c9), "-o", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["family"] == "direct_product"

    def test_invalid_params(self, tmp_path, capsys):
        code = main(["construct", "heisenberg", "--p", "4",
                     "-o", str(tmp_path / "x.json")])
        assert code == 2
        assert "error" in capsys.readouterr().err


class TestAnalyze:
    def test_heisenberg(self, h3_file, capsys):
        assert main(["analyze", str(h3_file)]) == 0
        out = capsys.readouterr().out
        assert "order: 27" in out
        assert "exponent: 3" in out
        assert "class: 2" in out
        assert "center_order: 3" in out

    def test_wreath_structured(self, w3_file, capsys):
        assert main(["analyze", str(w3_file), "--format", "structured"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["order"] == 81
        assert data["exponent"] == 9
        assert data["class"] == 3

    def test_cyclic(self, tmp_path, capsys):
        path = tmp_path / "c9.json"
        main(["construct", "cyclic", "--m", "9", "-o", str(path)])
        assert main(["analyze", str(path)]) == 0
        out = capsys.readouterr().out
        assert "order: 9" in out and "class: 1" in out


class TestCheck:
    def test_s_pass_exit_zero(self, h3_file, capsys):
        assert main(["check", "s", str(h3_file)]) == 0
        assert "holds: true" in capsys.readouterr().out

    def test_regular_fail_exit_one(self, w3_file, capsys):
        assert main(["check", "regular", str(w3_file)]) == 1
        out = capsys.readouterr().out
        assert "holds: false" in out
        assert "witness" in out

    def test_capped_exit_two(self, b321_file):
        assert main(["check", "v-regular", str(b321_file)]) == 2

    def test_section_cap_exit_two(self, h3_file, capsys):
        assert main(["check", "p2", str(h3_file), "--section-cap", "16"]) == 2
        assert "holds-capped" in capsys.readouterr().out

    def test_s_on_affine_carrier_rejected(self, b321_file, capsys):
        assert main(["check", "s", str(b321_file)]) == 2
        assert "monomial" in capsys.readouterr().out

    def test_s_hat_on_basic_exhaustive(self, b321_file, capsys):
        assert main(["check", "s-hat", str(b321_file)]) == 0
        assert "reps_checked: 9" in capsys.readouterr().out

    def test_engel_default_depth(self, b321_file):
        assert main(["check", "engel", str(b321_file)]) == 0

    def test_structured_report_round_trips(self, w3_file, capsys):
        main(["check", "s", str(w3_file), "--format", "structured"])
        payload = json.loads(capsys.readouterr().out)
        report = PropertyReport.from_json(payload["report"])
        assert report.holds is False
        assert payload["config"]["seed"] == 0

    def test_text_mirrors_structured(self, h3_file, capsys):
        main(["check", "wp2", str(h3_file), "--format", "structured"])
        structured = json.loads(capsys.readouterr().out)
        main(["check", "wp2", str(h3_file)])
        text = capsys.readouterr().out
        assert f"report.holds: {json.dumps(structured['report']['holds'])}" in text
        for counter, value in structured["report"]["counters"].items():
            assert f"report.counters.{counter}: {value}" in text

    def test_missing_file(self, capsys):
        assert main(["check", "s", "/nonexistent/g.json"]) == 2

    def test_output_to_file(self, h3_file, tmp_path):
        out = tmp_path / "report.json"
        assert main(["check", "s", str(h3_file), "--format", "structured",
                     "-o", str(out)]) == 0
        assert json.loads(out.read_text())["report"]["holds"] is True


class TestSpectrum:
    def test_matrix_file(self, tmp_path, capsys):
        from submult.families import big_cycle
        path = tmp_path / "p9.json"
        path.write_text(json.dumps(big_cycle(3, 2).to_json()))
        assert main(["spectrum", str(path), "--format", "structured"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["order"] == 9
        assert len(data["spectrum"]) == 9

    def test_group_file(self, h3_file, capsys):
        assert main(["spectrum", str(h3_file), "--format", "structured"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data["generators"]) == 2
        assert len(data["generators"][0]["spectrum"]) == 3


class TestVerify:
    def test_single_suite(self, capsys):
        assert main(["verify", "T2"]) == 0
        out = capsys.readouterr().out
        assert "T2 [PASS]" in out
        assert "seed: 0" in out

    def test_seeded_suite_structured(self, capsys):
        assert main(["verify", "T1", "--seed", "7", "--format",
                     "structured"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["passed"] is True
        assert data["config"]["seed"] == 7

    def test_unknown_suite(self, capsys):
        assert main(["verify", "T99"]) == 2
