"""
End-to-end checks with exact small-instance numbers.
"""
import pytest
import numpy as np
from src.axioms.demos import demo
from src.axioms.mixed import audit_M5, check_separable_mixed, replay_M5
from src.axioms.pure import audit_P1, audit_P2, audit_P3, audit_P4, check_separable_pure, estimate_constant
from src.axioms.pure import profile_recursion_gap
from src.cli.main import main
from src.entropy.khinchin import SHANNON, RENYI2, audit_khinchin, audit_recursion, recursion_gap
from src.entropy.von_neumann import svn_pure
from src.linalg.ops import partial_trace, eigenvalues_hermitian
from src.measures.gamma import gamma_norm_pure
from src.measures.registry import SVN, GAMMA, default_registry
from src.schmidt.decomposition import schmidt_decompose, schmidt_coefficients
from src.states.builders import bell_state, projector
from src.states.ensembles import make_rng, random_pure_state, random_distribution

LN2 = np.log(2.0)

def test_bell_pipeline():
    psi = bell_state()
    assert np.allclose(schmidt_decompose(psi).coefficients, [0.5, 0.5], rtol=0, atol=1e-12)
    assert abs(svn_pure(psi) - LN2) < 1e-12
    assert abs(gamma_norm_pure(psi) - 2.0) < 1e-12

def test_reduced_spectrum_oracle():
    rng = make_rng(300)
    for _ in range(300):
        d1, d2 = (int(d) for d in rng.integers(1, 5, size=2))
        psi = random_pure_state(d1, d2, rng)
        p = schmidt_coefficients(psi)
        for side in ("first", "second"):
            spectrum = eigenvalues_hermitian(partial_trace(projector(psi).matrix, d1, d2, side))
            assert np.allclose(spectrum[: p.size], p, atol=1e-10)
            assert np.all(np.abs(spectrum[p.size:]) < 1e-10)

@pytest.mark.parametrize("seed", [1, 2, 3])
def test_svn_satisfies_pure_axioms(seed):
    for audit in (audit_P1, audit_P2, audit_P3, audit_P4):
        report = audit(SVN, samples=200, seed=seed, tol=1e-9)
        assert report.passed, report.axiom

def test_separable_states():
    assert check_separable_pure(SVN, samples=200, seed=0).passed

    l7 = check_separable_mixed(SVN, samples=200, seed=0)
    assert not l7.passed
    assert abs(l7.details["value"] - LN2) < 1e-9

def test_gamma_breaks_superposition(capsys):
    report = demo("p4-violation")
    assert abs(report.details["lhs"] - 4 * np.log(4)) < 1e-9
    assert abs(report.details["rhs"] - 4 * LN2) < 1e-9
    assert abs(report.worst_violation - 2.772588722) < 1e-9
    assert main(["demo", "p4-violation"]) == 1
    assert audit_P4(GAMMA, samples=200, seed=0).worst_violation >= 2.7

@pytest.mark.parametrize("c", [0.5, 1.0, 2.5])
def test_constant_of_scaled_entropy(c):
    m = default_registry().get(f"svn-scaled:{c}")
    estimate = estimate_constant(m, samples=300, seed=0)
    assert abs(estimate.c_mean - c) < 1e-8
    assert estimate.c_max_deviation < 1e-8

def test_gamma_is_not_a_multiple_of_entropy():
    assert estimate_constant(GAMMA, samples=300, seed=0).c_max_deviation > 0.1

def test_khinchin_characterization():
    assert all(r.passed for r in audit_khinchin(SHANNON, seed=0, tol=1e-9))

    expected = abs(0.98083 - 1.03972)
    fixed = audit_recursion(RENYI2, samples=0, tol=1e-9)
    assert not fixed.passed
    assert abs(fixed.worst_violation - expected) < 1e-4
    assert fixed.witness == {"p": [0.5, 0.5], "eta": 0.5}

    recursion = audit_khinchin(RENYI2, seed=0, tol=1e-9)[3]
    assert not recursion.passed
    (case,) = recursion.details["fixed_cases"]
    assert (case["p"], case["eta"]) == ([0.5, 0.5], 0.5)
    assert abs(case["gap"] - expected) < 1e-4
    assert recursion.worst_violation >= case["gap"]
    assert abs(recursion_gap(RENYI2, case["p"], case["eta"]) - case["gap"]) < 1e-15

def test_mixed_reduced_entropy_is_not_convex():
    report = audit_M5(SVN, samples=200, seed=0)
    assert report.worst_violation >= LN2 - 1e-9
    assert abs(replay_M5(SVN, report.witness) - report.worst_violation) < 1e-12

def test_cli_reports_are_reproducible(tmp_path):
    paths = [tmp_path / "first.json", tmp_path / "second.json"]
    for path in paths:
        argv = ["audit", "--measure", "svn", "--axioms", "P2,P3,P4", "--samples", "200", "--seed", "42",
                "--out", str(path)]
        assert main(argv) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()

def test_profile_split_identity():
    rng = make_rng(10)
    for _ in range(100):
        p = random_distribution(int(rng.integers(1, 6)), rng).weights
        assert profile_recursion_gap(SVN, p, float(rng.uniform())) < 1e-9
