import json

import pytest

from bafsched.cli import main
from bafsched.toolkit.formats import serialize_mc_instance
from bafsched.toolkit.generators import gen_mc_instance

TIGHT_DOC = '{"jobs": [{"id": 0, "p": "9/10"}, {"id": 1, "p": "9/10"}], "machines": [{"id": 0, "c": "1"}, {"id": 1, "c": "1"}]}'


@pytest.fixture
def tight(tmp_path):
    path = tmp_path / "tight.json"
    path.write_text(TIGHT_DOC)
    return str(path)


@pytest.mark.parametrize("algo, expected", [("ffd", "14/5"), ("dp", "2"), ("aqptas", "2"), ("ptas", "2"), ("oracle", "2")])
def test_solve(tight, capsys, algo, expected):
    assert main(["solve", "--algo", algo, "--epsilon", "1/4", tight]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["total"] == expected
    assert set(out["assignment"]) == {"0", "1"}


def test_solve_then_verify(tight, tmp_path, capsys):
    main(["solve", "--algo", "ffd", tight])
    sched = tmp_path / "s.json"
    sched.write_text(capsys.readouterr().out)
    assert main(["verify", tight, str(sched)]) == 0
    assert json.loads(capsys.readouterr().out)["total"] == "14/5"
    bad = tmp_path / "bad.json"
    bad.write_text('{"assignment": {"0": 9}}')
    assert main(["verify", tight, str(bad)]) == 1
    assert json.loads(capsys.readouterr().out)["violations"] == ["missing-job(1)", "unknown-machine(0->9)"]


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"jobs": [{"id": 0, "p": "0"}], "machines": [{"id": 0, "c": "1"}]}')
    assert main(["solve", str(bad)]) == 2
    assert "non-positive-duration" in capsys.readouterr().err
    assert main(["solve", str(tmp_path / "missing.json")]) == 2


def test_solver_error_exit_code(tmp_path, capsys):
    path = tmp_path / "big.json"
    jobs = [{"id": j, "p": str(j + 1)} for j in range(8)]
    path.write_text(json.dumps({"jobs": jobs, "machines": [{"id": 0, "c": "1"}, {"id": 1, "c": "2"}]}))
    assert main(["solve", "--algo", "dp", "--state-budget", "10", str(path)]) == 1
    assert "solver error" in capsys.readouterr().err


def test_gen(capsys):
    assert main(["gen", "--family", "ffd-tight", "--epsilon", "1/10"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [j["p"] for j in doc["jobs"]] == ["9/10", "9/10"]
    assert main(["gen", "--family", "uniform", "--seed", "3", "--n", "4", "--m", "2", "--param", "den=5"]) == 0
    assert len(json.loads(capsys.readouterr().out)["jobs"]) == 4
    assert main(["gen", "--family", "uniform", "--param", "bogus=1"]) == 2


def test_bench(tmp_path, capsys):
    suite = tmp_path / "suite.json"
    suite.write_text(json.dumps({
        "algorithms": ["ffd", "ptas"],
        "epsilons": ["1/2"],
        "instances": [{"id": "t", "generate": {"family": "ffd-tight", "epsilon": "1/10"}}],
    }))
    out = tmp_path / "out.csv"
    assert main(["bench", "--suite", str(suite), "--out", str(out), "--no-timing"]) == 0
    assert out.read_text().splitlines() == [
        "instance_id,algorithm,epsilon,total,oracle_total,ratio,wall_ms",
        "t,ffd,,14/5,2,7/5,",
        "t,ptas,1/2,2,2,1,",
    ]


def test_mc_solve_and_verify(tmp_path, capsys):
    inst = tmp_path / "mc.json"
    inst.write_text('{"jobs": [{"id": 0, "widths": ["2", "5"]}, {"id": 1, "widths": ["3"]}, {"id": 2, "widths": ["1"]}]}')
    assert main(["mc-solve", "--epsilon", "1/2", str(inst)]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["makespan"] == "6"
    sched = tmp_path / "mcs.json"
    sched.write_text(out)
    assert main(["mc-verify", str(inst), str(sched)]) == 0
    assert json.loads(capsys.readouterr().out)["feasible"] is True
    sched.write_text('{"start": {"0": "0", "1": "0", "2": "5"}}')
    assert main(["mc-verify", str(inst), str(sched)]) == 1
    assert json.loads(capsys.readouterr().out)["violations"] == [{"level": 1, "jobs": [0, 1]}]


def test_mc_solve_generated(tmp_path, capsys):
    inst = tmp_path / "mc.json"
    inst.write_text(serialize_mc_instance(gen_mc_instance(4, n=7, L=4)))
    assert main(["mc-solve", str(inst)]) == 0
    sched = tmp_path / "mcs.json"
    sched.write_text(capsys.readouterr().out)
    assert main(["mc-verify", str(inst), str(sched)]) == 0
