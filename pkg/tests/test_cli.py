import json

import pytest

from kleinian import cli
from kleinian.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "E8")
    assert code == 1
    assert "FAIL E8 presentation: relation " in out
    assert out.rstrip().endswith("failed in section presentation")
    code, out, _ = run(capsys, "verify", "E8", "--presentation", "working")
    assert code == 0 and out.rstrip().endswith("all checks passed")
    assert run(capsys, "verify", "A", "--n", "7", "--presentation", "working")[0] == 0
    assert run(capsys, "verify", "A", "--n", "3", "II", "--presentation", "working")[0] == 0
    assert run(capsys, "verify", "D6")[0] == 0


def test_usage_errors(capsys):
    assert run(capsys, "verify", "bogus")[0] == 2
    code, _, err = run(capsys, "report", "A", "4", "III")
    assert code == 2 and "no case III" in err
    assert run(capsys, "verify", "E8", "--bogus")[0] == 2
    assert run(capsys, "charts", "3", "x*y - z^4")[0] == 2
    assert run(capsys, "charts", "3", "x +")[0] == 2
    assert run(capsys, "solve-adhm", "F4")[0] == 2
    assert run(capsys)[0] == 2


def test_verify_all_working(capsys):
    code, out, _ = run(capsys, "verify", "all", "--presentation", "working")
    assert code == 0
    assert "FAIL" not in out


def test_verify_all_stated_reports_failures(capsys):
    code, out, _ = run(capsys, "verify", "all", "--format", "json")
    assert code == 1
    data = json.loads(out)
    failed = {(c["type"], c["name"].split(" ")[0]) for c in data["checks"] if not c["passed"]}
    assert ("E8", "relation") in failed and ("D5", "{y,z}") in failed
    assert not any(t.startswith("A") for t, _ in failed)


@pytest.mark.parametrize("argv", [
    ["verify", "E7", "--presentation", "working"],
    ["report", "E7", "I"],
    ["report", "D", "6", "II"],
    ["report", "involutions", "D6"],
    ["charts", "5", "x-y"],
    ["solve-adhm", "D5", "--seeds", "2"],
])
def test_json_is_deterministic_and_round_trips(capsys, argv):
    code1, out1, _ = run(capsys, *argv, "--format", "json")
    code2, out2, _ = run(capsys, *argv, "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    data = json.loads(out1)
    assert data["schema"] == cli.SCHEMA and data["tool"] == "kleinian"
    assert json.dumps(data, sort_keys=True, indent=2) + "\n" == out1


def test_report_every_catalog_case(capsys):
    for gamma in cli.ALL_TYPES:
        for case in cli.quiver.lift_cases(gamma):
            code, out, _ = run(capsys, "report", gamma.label, case, "--format", "json")
            assert code == 0
            data = json.loads(out)
            assert len([c for c in data["components"] if c["name"].startswith("C")]) == gamma.n


def test_report_dot(capsys):
    code, out, _ = run(capsys, "report", "E7", "I", "--format", "dot")
    assert code == 0
    assert sum("shape=box" in l for l in out.splitlines()) == 2
    assert out.count("[label=") == 9


def test_report_reduced_fiber_text(capsys):
    code, out, _ = run(capsys, "report", "A", "5", "III")
    assert code == 0 and "reduced exceptional fiber" in out


def test_charts(capsys):
    code, out, _ = run(capsys, "charts", "5", "x-y")
    assert code == 0 and "1, 2, 3, 2, 1" in out and "agrees" in out
    code, out, _ = run(capsys, "charts", "6", "z", "--format", "json")
    assert json.loads(out)["orders"] == [1] * 6
    code, out, _ = run(capsys, "charts", "x^2*y", "--n", "3", "--format", "json")
    assert code == 0 and json.loads(out)["orders"] == [7, 6, 5]


def test_solve_adhm(capsys):
    code, out, _ = run(capsys, "solve-adhm", "E6", "--seeds", "3", "--seed", "5")
    assert code == 0
    assert out.rstrip().endswith("3/3 converged")
    assert [l.split(":")[0] for l in out.splitlines()[:3]] == ["seed 5", "seed 6", "seed 7"]


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and out.strip()
