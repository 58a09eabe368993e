import json
import logging

import pytest

from decomposition.fcon import NOT_STRUCTURAL
from main import EXIT_ERROR, EXIT_FALSE, EXIT_OK, main

COMMUNITY_DOT = """digraph dependence {
  m1;
  m2;
  m3;
  u1;
  u2;
  u3;
  u4;
  m1 -> m1;
  m1 -> m3;
  m2 -> m1;
  m2 -> m2;
  m3 -> m3;
  u1 -> m1;
  u1 -> u1;
  u2 -> m1;
  u2 -> m2;
  u2 -> u2;
  u3 -> m3;
  u3 -> u3;
  u4 -> m3;
  u4 -> u4;
}
"""

UNAVAILABLE_ACTION = {
    "agents": ["a"],
    "states": ["s0"],
    "props": [],
    "labeling": {},
    "actions": ["go"],
    "available": {"a": {"s0": ["go"]}},
    "transitions": [{"from": "s0", "moves": {"a": "go"}, "to": "s0"}],
    "internals": {"a": {"s0": {"int": 0}}},
    "rules": {"a": {"s0": {"tau": ["a"], "gamma": [{"guard": "true", "action": "stop"}]}}},
}


@pytest.fixture(autouse=True)
def settings_env(monkeypatch):
    for name in ("SOMAS_CANDIDATE_CAP", "SOMAS_LOG_FILE", "SOMAS_FULL_CONTRIBUTION_LIMIT", "SOMAS_BRUTE_FORCE_LIMIT"):
        monkeypatch.setenv(name, "")
    monkeypatch.setenv("SOMAS_LOG_LEVEL", "WARNING")
    yield
    logging.getLogger().handlers.clear()


@pytest.fixture
def model(models_dir):
    return lambda name: str(models_dir / name)


class TestValidate:
    @pytest.mark.parametrize(
        "name", ["two_trains.json", "two_trains_strict.json", "task_delegation.json", "community.json"]
    )
    def test_shipped_models_are_valid(self, model, capsys, name):
        assert main(["validate", "--model", model(name)]) == EXIT_OK
        assert capsys.readouterr().out == "valid\n"

    def test_unavailable_action(self, write_json, capsys):
        path = write_json("bad.json", UNAVAILABLE_ACTION)
        assert main(["validate", "--model", str(path)]) == EXIT_FALSE
        assert capsys.readouterr().out == "action unavailable (agent a, state s0): stop\n"

    def test_json_report(self, write_json, capsys):
        path = write_json("bad.json", UNAVAILABLE_ACTION)
        assert main(["validate", "--model", str(path), "--json"]) == EXIT_FALSE
        assert json.loads(capsys.readouterr().out) == {
            "valid": False,
            "violations": [{"kind": "action unavailable", "agent": "a", "state": "s0", "detail": "stop"}],
        }

    def test_malformed_json(self, write_json, capsys):
        path = write_json("broken.json", "{")
        assert main(["validate", "--model", str(path)]) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("error: ")

    def test_guard_must_be_text(self, write_json, capsys):
        rules = {"a": {"s0": {"tau": ["a"], "gamma": [{"guard": 5, "action": "go"}]}}}
        path = write_json("bad.json", {**UNAVAILABLE_ACTION, "rules": rules})
        assert main(["validate", "--model", str(path)]) == EXIT_ERROR
        assert "guard of a at s0 must be a str" in capsys.readouterr().err


class TestCheck:
    def test_true_and_false(self, model, capsys):
        assert main(["check", "--model", model("two_trains.json"), "<a1,a2> F passed"]) == EXIT_OK
        assert capsys.readouterr().out == "true\n"
        assert main(["check", "--model", model("two_trains.json"), "<a1> F passed"]) == EXIT_FALSE
        assert capsys.readouterr().out == "false\n"

    def test_json(self, model, capsys):
        assert main(["check", "--model", model("two_trains.json"), "--json", "<a1,a2> F passed"]) == EXIT_OK
        assert capsys.readouterr().out == (
            "{\n"
            '  "state": "q0",\n'
            '  "formula": "<a1,a2> F passed",\n'
            '  "holds": true\n'
            "}\n"
        )

    def test_query_file(self, model, capsys):
        code = main(["check", "--model", model("two_trains.json"), "--query", model("two_trains_query.json")])
        assert code == EXIT_OK
        assert capsys.readouterr().out == "<a1,a2> F passed: true\n<a1,a2> G !crash: true\n"

    def test_state_option(self, model, capsys):
        assert main(["check", "--model", model("two_trains.json"), "--state", "q4", "<a1,a2> F passed"]) == EXIT_FALSE
        assert capsys.readouterr().out == "false\n"

    @pytest.mark.parametrize(
        "extra",
        [["--state", "q9", "passed"], ["<a1 F passed"], ["<a9> F passed"], []],
    )
    def test_errors(self, model, capsys, extra):
        assert main(["check", "--model", model("two_trains.json"), *extra]) == EXIT_ERROR
        assert capsys.readouterr().err.startswith("error: ")


class TestFullContribution:
    def test_two_trains(self, model, capsys):
        assert main(["fullcontrib", "--model", model("two_trains.json"), "--goal", "F passed", "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == {
            "state": "q0",
            "entries": [{"coalition": ["a1", "a2"], "goal": "F passed"}],
            "rejections": [],
        }

    def test_text_output(self, model, capsys):
        assert main(["fullcontrib", "--model", model("two_trains.json"), "--goal", "F passed"]) == EXIT_OK
        assert capsys.readouterr().out == "{a1,a2} F passed\n"

    def test_no_goals(self, model, capsys):
        assert main(["fullcontrib", "--model", model("two_trains.json"), "--json"]) == EXIT_OK
        assert json.loads(capsys.readouterr().out) == {"state": "q0", "entries": [], "rejections": []}

    def test_single_coalition(self, model, capsys):
        args = ["fullcontrib", "--model", model("two_trains.json"), "--goal", "F passed"]
        assert main(args + ["--coalition", "a1,a2"]) == EXIT_OK
        assert capsys.readouterr().out == (
            "{a1,a2} F passed: full (semantic=True, structural=True, minimal=True)\n"
        )
        assert main(args + ["--coalition", "a1"]) == EXIT_FALSE
        assert "{a1} F passed: not full" in capsys.readouterr().out

    def test_community_query(self, model, capsys):
        code = main(
            ["fullcontrib", "--model", model("community.json"), "--query", model("community_query.json"), "--json"]
        )
        assert code == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert {"coalition": ["m1", "m2", "u1", "u2"], "goal": "F com({u1,u2},{m1})"} in report["entries"]
        assert {"coalition": ["m3", "u3", "u4"], "reason": NOT_STRUCTURAL, "goal": None} in report["rejections"]

    def test_task_delegation(self, model, capsys):
        args = ["fullcontrib", "--model", model("task_delegation.json"), "--query", model("task_delegation_query.json")]
        assert main(args + ["--workers", "2"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[:4] == ["{a} F psi_a", "{d,e} F psi_de", "{a,b,e} F psi_abe", "{a,b,c,d,e} F psi"]
        assert all(line.startswith("rejected ") for line in lines[4:])


class TestGraph:
    def test_two_trains(self, model, capsys):
        assert main(["graph", "--model", model("two_trains.json")]) == EXIT_OK
        assert capsys.readouterr().out == (
            "digraph dependence {\n  a1;\n  a2;\n  a1 -> a1;\n  a1 -> a2;\n  a2 -> a1;\n  a2 -> a2;\n}\n"
        )

    def test_community(self, model, capsys):
        assert main(["graph", "--model", model("community.json")]) == EXIT_OK
        assert capsys.readouterr().out == COMMUNITY_DOT

    def test_layers(self, model, capsys):
        assert main(["graph", "--model", model("task_delegation.json"), "--layers"]) == EXIT_OK
        assert capsys.readouterr().out.count("subgraph cluster_") == 3

    def test_json(self, model, capsys):
        assert main(["graph", "--model", model("task_delegation.json"), "--layers", "--json"]) == EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["layers"] == [["a", "e"], ["b", "d"], ["c"]]
        assert ["e", "d"] in report["edges"]


def test_fuzz(tmp_path, capsys):
    assert main(["fuzz", "--count", "3", "--formulas", "2", "--out", str(tmp_path), "--json"]) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["seed"] == 0
    assert report["models"] == 3
    assert report["mismatches"] == []
    assert list(tmp_path.iterdir()) == []
