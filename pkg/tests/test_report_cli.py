"""Tests for report rendering and the command line."""

import csv
import io
import json

import pytest

from qdt import parse_scenario, run_eval, run_sequence
from qdt.cli import main
from qdt.report import ProbabilityReport, write_atomic

MINIMAL = '{"ambient_dim": 2}'


def _csv_values(text: str) -> dict[str, str]:
    reader = csv.reader(io.StringIO(text))
    next(reader)  # header
    return {row[0]: row[1] for row in reader}


class TestEmitters:
    def test_json_round_trips(self):
        report = run_eval(parse_scenario(MINIMAL))
        doc = json.loads(report.to_json())
        assert doc["kind"] == "eval"
        assert doc["probabilities"]["A0"] == 0.5

    def test_csv_and_json_agree_numerically(self):
        report = run_sequence(parse_scenario('{"ambient_dim": 3, "seed": 2}'), "A0", "A1")
        doc = json.loads(report.to_json())
        flat_csv = _csv_values(report.to_csv())

        def walk(value, prefix=""):
            if isinstance(value, dict):
                for k, v in value.items():
                    yield from walk(v, f"{prefix}.{k}" if prefix else k)
            elif isinstance(value, list):
                for i, v in enumerate(value):
                    yield from walk(v, f"{prefix}[{i}]")
            else:
                yield prefix, value

        for path, value in walk(doc):
            assert path in flat_csv
            if isinstance(value, float):
                # identical at (better than) 15 significant digits
                assert float(flat_csv[path]) == value

    def test_table_uses_twelve_digits(self):
        report = ProbabilityReport(kind="demo", sections={"x": {"v": 1 / 3}})
        line = [l for l in report.to_table().splitlines() if l.startswith("x.v")][0]
        assert "0.333333333333" in line

    def test_non_finite_becomes_null(self):
        report = ProbabilityReport(kind="demo", sections={"x": {"v": float("nan")}})
        assert json.loads(report.to_json())["x"]["v"] is None

    def test_timings_never_serialized(self):
        report = run_eval(parse_scenario(MINIMAL))
        assert report.timings  # measured
        assert "timings" not in report.to_json()
        assert "timings" not in report.to_csv()

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            ProbabilityReport(kind="demo").render("yaml")


class TestAtomicWrite:
    def test_writes_and_replaces(self, tmp_path):
        target = tmp_path / "out.json"
        write_atomic(target, "first\n")
        write_atomic(target, "second\n")
        assert target.read_text() == "second\n"
        leftovers = [p for p in tmp_path.iterdir() if p.name.startswith(".tmp-")]
        assert not leftovers


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "scenario.json"
    path.write_text(MINIMAL)
    return str(path)


class TestCli:
    def test_validate_ok(self, scenario_file, capsys):
        assert main(["validate", "--scenario", scenario_file]) == 0
        out = capsys.readouterr().out
        assert "valid" in out

    def test_eval_json(self, scenario_file, capsys):
        assert main(["eval", "--scenario", scenario_file, "--format", "json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["probabilities"] == {"A0": 0.5, "A1": 0.5}

    def test_missing_file_exits_2(self, capsys):
        assert main(["eval", "--scenario", "/nonexistent.json"]) == 2
        assert "error" in capsys.readouterr().err

    def test_invalid_scenario_exits_2(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"ambient_dim": 0}')
        assert main(["eval", "--scenario", str(path)]) == 2
        assert "$.ambient_dim" in capsys.readouterr().err

    def test_conditioning_error_exits_3(self, tmp_path, capsys):
        path = tmp_path / "certain.json"
        path.write_text(
            '{"ambient_dim": 2, "initial_state": {"kind": "pure", "vector": [[1,0],[0,0]]}}'
        )
        code = main(["sequence", "--scenario", str(path), "--first", "A1", "--second", "A0"])
        assert code == 3
        assert "A1" in capsys.readouterr().err

    def test_unknown_label_exits_2(self, scenario_file, capsys):
        code = main(["sequence", "--scenario", scenario_file, "--first", "A0", "--second", "zz"])
        assert code == 2

    def test_sample_and_audit_run(self, scenario_file, capsys):
        assert main(["sample", "--scenario", scenario_file, "--n", "100"]) == 0
        capsys.readouterr()
        assert main(["audit", "--scenario", scenario_file, "--trials", "5"]) == 0

    def test_seed_override_changes_sample(self, scenario_file, capsys):
        main(["sample", "--scenario", scenario_file, "--n", "1000", "--seed", "1",
              "--format", "json"])
        first = capsys.readouterr().out
        main(["sample", "--scenario", scenario_file, "--n", "1000", "--seed", "2",
              "--format", "json"])
        second = capsys.readouterr().out
        assert first != second
        assert json.loads(first)["metadata"]["seed"] == 1

    def test_out_writes_file_and_diagnostics_to_stderr(self, scenario_file, tmp_path, capsys):
        out = tmp_path / "report.csv"
        code = main(
            ["eval", "--scenario", scenario_file, "--format", "csv", "--out", str(out)]
        )
        captured = capsys.readouterr()
        assert code == 0
        assert captured.out == ""
        assert str(out) in captured.err
        assert out.read_text().startswith("field,value")

    def test_identical_invocations_identical_bytes(self, scenario_file, capsys):
        main(["audit", "--scenario", scenario_file, "--trials", "3", "--format", "json"])
        first = capsys.readouterr().out
        main(["audit", "--scenario", scenario_file, "--trials", "3", "--format", "json"])
        second = capsys.readouterr().out
        assert first == second
