"""The matchgen command line, run in process."""

import json

import pytest

from matchgen.aztec import PeriodMatrix
from matchgen.cli import main
from matchgen.exprs import parse
from matchgen.graphs import WeightedGraph, graph_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out.splitlines()[-1])


def period_file(tmp_path, rows, name="period.json"):
    path = tmp_path / name
    path.write_text(PeriodMatrix.from_strings(rows).to_json())
    return str(path)


def test_compute_family_count(capsys):
    code, data = run_json(capsys, "compute", "--family", "dungeon-D",
                          "--n", "2", "--bind", "x=1,y=1")
    assert code == 0
    assert data["value"] == "13"
    assert data["factorization"] == [[13, 1]]


def test_compute_family_symbolic_has_no_factorization(capsys):
    code, data = run_json(capsys, "compute", "--family", "dragon",
                          "--n", "1")
    assert code == 0
    assert parse(data["value"]) == parse("(1+a^2)^2")
    assert "factorization" not in data


def test_compute_period_with_trace(capsys, tmp_path):
    path = period_file(tmp_path, [["1", "1"], ["1", "1"]])
    code, data = run_json(capsys, "compute", "--period", path,
                          "--n", "3", "--trace")
    assert code == 0
    assert data["value"] == "64"
    factors = [parse(step["factor"]) for step in data["trace"]]
    prod = parse("1")
    for f in factors:
        prod = prod * f
    assert prod == parse("64")
    assert [step["order"] for step in data["trace"]] == [3, 2, 1]


def test_compute_trace_requires_period(capsys):
    code, data = run_json(capsys, "compute", "--family", "dragon",
                          "--n", "1", "--trace")
    assert code == 1
    assert data["error"]["kind"] == "ComputationError"


def test_compute_max_order_budget(capsys, tmp_path):
    path = period_file(tmp_path, [["1", "1"], ["1", "1"]])
    code, data = run_json(capsys, "compute", "--period", path,
                          "--n", "9", "--max-order", "8")
    assert code == 1
    assert "max-order" in data["error"]["message"]


def test_compute_missing_period_file(capsys):
    code, data = run_json(capsys, "compute", "--period", "/no/such/file",
                          "--n", "1")
    assert code == 1


def test_compute_bad_binding(capsys):
    code, data = run_json(capsys, "compute", "--family", "dragon",
                          "--n", "1", "--bind", "nonsense")
    assert code == 1


def test_orbit_detects_proportional(capsys, tmp_path):
    path = period_file(tmp_path, [["1", "1"], ["1", "1"]])
    code, data = run_json(capsys, "orbit", "--period", path)
    assert code == 0
    assert data["kind"] == "proportional"
    assert data["k"] == 1


def test_orbit_none_on_generic_period(capsys, tmp_path):
    rows = [["a", "b", "c", "d"], ["e", "f", "g", "h"],
            ["i", "j", "k", "l"], ["m", "n", "o", "p"]]
    path = period_file(tmp_path, rows)
    code, data = run_json(capsys, "orbit", "--period", path,
                          "--max-iter", "2")
    assert code == 0
    assert data["kind"] == "none"


def test_verify_pass(capsys):
    code, out = run(capsys, "verify", "aztec-basic")
    assert code == 0
    assert "[PASS] aztec-basic/" in out
    data = json.loads(out.splitlines()[-1])
    assert data["passed"] is True


def test_verify_unknown_suite(capsys):
    code = main(["verify", "nonesuch"])
    captured = capsys.readouterr()
    assert code == 2
    assert "unknown suite" in captured.err


def test_oracle(capsys, tmp_path):
    g = WeightedGraph()
    g.add_edge("a", "b", parse("w"))
    g.add_edge("b", "c", parse("x"))
    g.add_edge("c", "d", parse("y"))
    g.add_edge("d", "a", parse("z"))
    path = tmp_path / "graph.json"
    path.write_text(graph_to_json(g))
    code, data = run_json(capsys, "oracle", str(path))
    assert code == 0
    assert parse(data["value"]) == parse("w*y+x*z")


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--n", "1"])
    assert exc.value.code == 2
