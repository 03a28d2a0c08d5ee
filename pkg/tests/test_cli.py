import json
import pytest
import numpy as np
from pydantic import ValidationError
from src.cli.config import RunConfig
from src.cli.main import main
from src.states.builders import bell_state
from src.states.io import write_state, load_state
from src.states.models import StateVector, DensityOperator

@pytest.fixture
def bell_file(tmp_path):
    path = tmp_path / "bell.json"
    write_state(path, bell_state())
    return path

def test_compute_prints_value_and_coefficients(bell_file, capsys):
    assert main(["compute", "--measure", "svn", "--state", str(bell_file)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "0.6931471806"
    assert lines[1] == "schmidt coefficients: 0.5 0.5"

def test_compute_in_bits_writes_full_precision(bell_file, tmp_path, capsys):
    out = tmp_path / "value.json"
    assert main(["compute", "--measure", "gamma", "--state", str(bell_file), "--base", "bit", "--out", str(out)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "2"
    document = json.loads(out.read_text())
    assert document["measure"] == "gamma"
    assert document["base"] == "bit"
    assert abs(document["value_nat"] - 2 * np.log(2)) < 1e-12

def test_compute_on_mixed_state(tmp_path, capsys):
    path = tmp_path / "rho.json"
    write_state(path, DensityOperator(2, 2, np.diag([0.5, 0, 0, 0.5])))
    assert main(["compute", "--measure", "svn-scaled:2", "--state", str(path)]) == 0
    assert capsys.readouterr().out.strip() == "1.386294361"

def test_audit_passes(tmp_path, capsys):
    out = tmp_path / "audit.json"
    status = main(["audit", "--measure", "svn", "--axioms", "P2,P3,P4", "--samples", "50", "--seed", "42",
                   "--out", str(out)])
    assert status == 0
    document = json.loads(out.read_text())
    assert [r["axiom"] for r in document["reports"]] == ["P2", "P3", "P4"]
    assert document["summary"] == {"total": 3, "passed": 3, "failed": 0}
    assert document["seed"] == 42
    assert "P4" in capsys.readouterr().out

def test_audit_reports_are_byte_identical(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    for path in (first, second):
        main(["audit", "--axioms", "P2,P3,P4,M5", "--samples", "30", "--seed", "42", "--out", str(path)])
    assert first.read_bytes() == second.read_bytes()

def test_failed_audit_exits_one_and_replays(tmp_path, capsys):
    out = tmp_path / "audit.json"
    assert main(["audit", "--axioms", "L7,M5", "--samples", "10", "--out", str(out)]) == 1
    capsys.readouterr()

    assert main(["compute", "--report", str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["axiom", "reported", "replayed"]
    for line in lines[1:]:
        _, reported, replayed = line.split()
        assert reported == replayed

def test_demo_exits_one(tmp_path, capsys):
    out = tmp_path / "demo.json"
    assert main(["demo", "p4-violation", "--out", str(out)]) == 1
    assert "2.772588722" in capsys.readouterr().out
    document = json.loads(out.read_text())
    assert document["samples"] == 1
    assert document["seed"] is None
    report = document["reports"][0]
    assert report["axiom"] == "P4"
    assert report["measure"] == "gamma"
    assert abs(report["worst_violation"] - 4 * np.log(2)) < 1e-9

def test_gen_writes_loadable_states(tmp_path, capsys):
    pure_path, sep_path = tmp_path / "psi.json", tmp_path / "rho.json"
    assert main(["gen", "--d1", "2", "--d2", "3", "--seed", "5", "--out", str(pure_path)]) == 0
    assert main(["gen", "--d1", "2", "--d2", "2", "--kind", "separable", "--out", str(sep_path)]) == 0
    assert isinstance(load_state(pure_path), StateVector)
    assert isinstance(load_state(sep_path), DensityOperator)
    assert "wrote pure state (2x3)" in capsys.readouterr().out

def test_khinchin_command(capsys):
    assert main(["khinchin", "--functional", "shannon", "--samples", "20"]) == 0
    assert main(["khinchin", "--functional", "renyi2", "--samples", "20"]) == 1
    assert "KF-RECURSION" in capsys.readouterr().out

@pytest.mark.parametrize("argv, field", [
    (["audit", "--measure", "renyi", "--axioms", "P2"], "measure"),
    (["audit", "--axioms", "P2,P9"], "axioms"),
    (["audit", "--axioms", "P2", "--samples", "0"], "samples"),
    (["audit", "--axioms", "P2", "--tol", "-1"], "tolerance"),
    (["gen", "--d1", "0", "--d2", "2", "--out", "x.json"], "d1"),
])
def test_invalid_configuration_exits_two(argv, field, capsys):
    assert main(argv) == 2
    err = capsys.readouterr().err.strip().splitlines()[-1]
    assert err.startswith(f"error: {field}")

def test_bad_state_files_exit_two(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert main(["compute", "--state", str(broken)]) == 2
    assert main(["compute", "--state", str(tmp_path / "missing.json")]) == 2

    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"kind": "pure", "d1": 2, "d2": 2, "amplitudes": [[1, 0]]}))
    assert main(["compute", "--state", str(wrong)]) == 2
    assert "error: amplitudes: expected 4 amplitudes" in capsys.readouterr().err

def test_run_config_rules():
    config = RunConfig(command="audit", axioms=["P2"], measure="svn-scaled:0.5")
    assert config.samples == 200 and config.tolerance == 1e-9
    with pytest.raises(ValidationError):
        RunConfig(command="audit")
    with pytest.raises(ValidationError):
        RunConfig(command="compute")
    with pytest.raises(ValidationError):
        RunConfig(command="demo", demo_kind="nothing")
    with pytest.raises(ValidationError):
        RunConfig(command="audit", axioms=["P2"], seed=2**64)

@pytest.mark.parametrize("measure", [None, "renyi3"])
def test_replay_of_unknown_functional_exits_two(tmp_path, measure, capsys):
    out = tmp_path / "kf.json"
    assert main(["khinchin", "--functional", "renyi2", "--samples", "5", "--out", str(out)]) == 1
    document = json.loads(out.read_text())
    for report in document["reports"]:
        report["measure"] = measure
    out.write_text(json.dumps(document))
    capsys.readouterr()

    assert main(["compute", "--report", str(out)]) == 2
    err = capsys.readouterr().err.strip().splitlines()[-1]
    assert err.startswith("error: measure: unknown functional")
