"""Command line client: flag parsing, artifacts, determinism, errors."""

import json

import pytest

from horolab import cli

EFN = {"matrix": [["0", "0"], ["0", "1"]]}


@pytest.fixture()
def efn_path(tmp_path):
    path = tmp_path / "efn.json"
    path.write_text(json.dumps(EFN), encoding="utf-8")
    return str(path)


def _run(argv):
    return cli.main(argv)


class TestFlagParsing:
    def test_int_list_range(self):
        assert cli._int_list("2:8:2") == [2, 4, 6, 8]
        assert cli._int_list("2:4") == [2, 3, 4]
        assert cli._int_list("1,5,9") == [1, 5, 9]

    def test_bad_range_exits(self):
        with pytest.raises(SystemExit):
            cli._int_list("9:1")

    def test_rgrid(self):
        assert cli._rgrid("2:32:5") == {"min": 2.0, "max": 32.0, "steps": 5}
        with pytest.raises(SystemExit):
            cli._rgrid("2:32")

    def test_divisor_tokens(self):
        spec = cli._divisor("inf:2,1.5", 0.0)
        assert spec["points"] == [
            {"point": None, "multiplicity": 2},
            {"point": 1.5, "multiplicity": 1},
        ]


class TestArtifacts:
    def test_solve_writes_sorted_deterministic_json(self, efn_path, tmp_path, capsys):
        out = tmp_path / "out"
        code = _run(["solve", "--system", efn_path, "--truncation", "5",
                     "--out", str(out)])
        assert code == 0
        paths = capsys.readouterr().out.strip().splitlines()
        assert paths == [str(out / "solve.json")]
        artifact = json.loads((out / "solve.json").read_text())
        assert set(artifact) == {"schema_version", "manifest", "result"}
        assert artifact["manifest"]["subcommand"] == "solve"
        assert artifact["manifest"]["request"]["truncation"] == 5
        # sorted keys, and nothing time-dependent anywhere
        text = (out / "solve.json").read_text()
        assert text.index('"manifest"') < text.index('"result"')
        assert "time" not in text and "date" not in text

    def test_repeat_runs_are_byte_identical(self, efn_path, tmp_path):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        for out in (out_a, out_b):
            assert _run(["construct", "--system", efn_path, "--degree", "3",
                         "--out", str(out)]) == 0
        assert (out_a / "construct.json").read_bytes() == (
            out_b / "construct.json"
        ).read_bytes()

    def test_stdout_mode_prints_the_artifact(self, efn_path, capsys):
        assert _run(["solve", "--system", efn_path, "--truncation", "4"]) == 0
        artifact = json.loads(capsys.readouterr().out)
        assert artifact["manifest"]["subcommand"] == "solve"

    def test_zero_lemma_csv(self, efn_path, tmp_path):
        out = tmp_path / "out"
        assert _run(["zero-lemma", "--system", efn_path, "--degrees", "2:4:2",
                     "--out", str(out)]) == 0
        lines = (out / "zero-lemma.csv").read_text().strip().splitlines()
        assert lines[0] == "x,ord,rank,measured_C"
        assert len(lines) == 3

    def test_growth_csv(self, tmp_path):
        out = tmp_path / "out"
        assert _run(["growth", "--map", "exp", "--target", "1",
                     "--rgrid", "4:64:6", "--out", str(out)]) == 0
        lines = (out / "growth.csv").read_text().strip().splitlines()
        assert lines[0] == "r,T,N,m,residual"
        assert len(lines) == 7

    def test_construct_profile_csv(self, efn_path, tmp_path):
        out = tmp_path / "out"
        assert _run(["construct", "--system", efn_path, "--degree", "2",
                     "--strategy", "max", "--profile-degrees", "2,3",
                     "--out", str(out)]) == 0
        assert (out / "construct-profile.csv").exists()


class TestPipelinesThroughCli:
    def test_independence_relation(self, capsys):
        assert _run(["independence", "--values", "e,e^2", "--degree", "2",
                     "--height", "100"]) == 0
        artifact = json.loads(capsys.readouterr().out)
        assert artifact["result"]["relation"]["relation_string"] == "y1^2 - y2"

    def test_isomono_family_flags(self, capsys):
        assert _run(["isomono", "--a", "1/2", "--b", "1/3", "--c", "1"]) == 0
        artifact = json.loads(capsys.readouterr().out)
        assert artifact["result"]["integrable"] is True

    def test_isomono_one_form_file(self, tmp_path, capsys):
        form = {"dz": [["x/z"]], "dx": [["0"]]}
        path = tmp_path / "form.json"
        path.write_text(json.dumps(form), encoding="utf-8")
        assert _run(["isomono", "--one-form", str(path)]) == 0
        artifact = json.loads(capsys.readouterr().out)
        assert artifact["result"]["integrable"] is False

    def test_initial_weights_change_the_germ(self, efn_path, capsys):
        assert _run(["certify-lg", "--system", efn_path, "--truncation", "12",
                     "--initial", "1,2"]) == 0
        artifact = json.loads(capsys.readouterr().out)
        assert artifact["manifest"]["request"]["system"]["initial"] == ["1", "2"]


class TestErrors:
    def test_missing_system_file(self, capsys):
        with pytest.raises(SystemExit) as info:
            _run(["solve", "--system", "/nonexistent/sys.json"])
        assert info.value.code == 1
        error = json.loads(capsys.readouterr().err)["error"]
        assert error["code"] == "missing-file"

    def test_module_error_is_machine_readable(self, efn_path, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"matrix": [["1/z"]]}), encoding="utf-8")
        code = _run(["solve", "--system", str(bad), "--base-point", "0"])
        assert code == 1
        captured = capsys.readouterr()
        error = json.loads(captured.err)["error"]
        assert error["code"] == "singular-point"
        assert captured.out == ""

    def test_validation_error_is_machine_readable(self, efn_path, capsys):
        code = _run(["solve", "--system", efn_path, "--truncation", "0"])
        assert code == 1
        error = json.loads(capsys.readouterr().err)["error"]
        assert error["code"] == "invalid-request"
