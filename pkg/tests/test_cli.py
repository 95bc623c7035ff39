"""CLI subcommands and exit codes."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

import pytest

from tagent.cli import main


def data_path(tmp_path: Path, name: str) -> str:
    text = resources.files("tagent.data").joinpath(name).read_text()
    target = tmp_path / name
    target.write_text(text)
    return str(target)


class TestValidate:
    @pytest.mark.parametrize(
        "name",
        [
            "routine.json",
            "learning.json",
            "practice.json",
            "affect.json",
            "vs_catalog.json",
            "scenario_teach_clean.json",
            "pursuit_demo.json",
        ],
    )
    def test_shipped_documents_are_valid(self, tmp_path, capsys, name):
        assert main(["validate", data_path(tmp_path, name)]) == 0
        assert "valid" in capsys.readouterr().out

    def test_invalid_document_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"net": "x", "states": [], "transitions": []}))
        assert main(["validate", str(bad)]) == 2
        assert "invalid" in capsys.readouterr().err

    def test_unparseable_exits_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        assert main(["validate", str(bad)]) == 2


class TestRun:
    def test_run_scenario_writes_trace(self, tmp_path, capsys):
        scenario = data_path(tmp_path, "scenario_teach_clean.json")
        trace_out = tmp_path / "trace.ndjson"
        assert main(["run", "--scenario", scenario, "--trace", str(trace_out)]) == 0
        out = capsys.readouterr().out
        assert "trace records" in out
        assert "happy_for" in out
        lines = trace_out.read_text().strip().splitlines()
        records = [json.loads(line) for line in lines]
        assert all(
            set(r) >= {"step", "net", "state_from", "transition", "task", "outcome", "timestamp"}
            for r in records
        )

    def test_missing_scenario_exits_2(self, tmp_path):
        assert main(["run", "--scenario", str(tmp_path / "none.json")]) == 2

    def test_seed_override_is_deterministic(self, tmp_path, capsys):
        scenario = data_path(tmp_path, "scenario_auto_practice.json")
        outputs = []
        for _ in range(2):
            trace_out = tmp_path / "t.ndjson"
            main(["run", "--scenario", scenario, "--seed", "5", "--trace", str(trace_out)])
            outputs.append(trace_out.read_text())
            capsys.readouterr()
        assert outputs[0] == outputs[1]


class TestSimulateFcm:
    def test_csv_output(self, tmp_path, capsys):
        model = data_path(tmp_path, "pursuit_demo.json")
        csv_out = tmp_path / "run.csv"
        assert main(["simulate-fcm", "--model", model, "--csv", str(csv_out)]) == 0
        lines = csv_out.read_text().strip().splitlines()
        assert lines[0] == "iteration,distance,desirability,likelihood,fear,reaction,outcome"
        assert lines[-1].endswith("absorbed")
        err = capsys.readouterr().err
        assert "outcome absorbed" in err

    def test_missing_model_exits_2(self, tmp_path):
        assert main(["simulate-fcm", "--model", str(tmp_path / "none.json")]) == 2
