import json
import pytest
import numpy as np
from src.errors import DensityValidationError, DimensionError, StateValidationError, StateFileError
from src.schmidt.decomposition import schmidt_coefficients
from src.states.builders import (
    projector,
    basis_state,
    product_state,
    bell_state,
    maximally_entangled,
    build_separable,
    mix,
    embed_state,
    embed_density,
    apply_local,
    conjugate_local,
    validate_density,
)
from src.states.ensembles import (
    make_rng,
    random_pure_state,
    random_local_unitary,
    random_density_operator,
    random_separable_decomposition,
    random_mixed_state,
    random_distribution,
    random_amplitudes,
)
from src.states.io import load_state, write_state, state_to_json, state_from_json
from src.states.models import (
    StateVector,
    DensityOperator,
    ProbabilityDistribution,
    AmplitudeDistribution,
    SeparableDecomposition,
)

@pytest.fixture
def bell():
    return bell_state()

def pure_density(d, i):
    m = np.zeros((d, d))
    m[i, i] = 1.0
    return DensityOperator(d, 1, m)

def test_state_vector_validation():
    with pytest.raises(StateValidationError):
        StateVector(2, 2, [1, 1, 0, 0])
    with pytest.raises(DimensionError):
        StateVector(2, 2, [1, 0, 0])

    # Within the renormalization window the constructor renormalizes
    psi = StateVector(2, 2, [1 + 1e-9, 0, 0, 0])
    assert abs(np.linalg.norm(psi.amplitudes) - 1) < 1e-12

def test_state_vector_is_read_only():
    psi = basis_state(2, 2, 0, 0)
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 0.0

def test_projector_examples(bell):
    assert np.allclose(projector(basis_state(2, 2, 0, 0)).matrix, np.diag([1, 0, 0, 0]))

    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    assert np.allclose(projector(bell).matrix, expected)
    assert abs(np.trace(projector(random_pure_state(3, 2, 4)).matrix) - 1) < 1e-12

def test_build_separable_examples():
    one_term = SeparableDecomposition(ProbabilityDistribution([1.0]), [pure_density(2, 0)], [pure_density(2, 0)])
    assert np.allclose(build_separable(one_term).matrix, np.diag([1, 0, 0, 0]))

    two_terms = SeparableDecomposition(
        ProbabilityDistribution([0.5, 0.5]),
        [pure_density(2, 0), pure_density(2, 1)],
        [pure_density(2, 0), pure_density(2, 1)],
    )
    assert np.allclose(build_separable(two_terms).matrix, np.diag([0.5, 0, 0, 0.5]))

    mixed = DensityOperator(2, 1, np.eye(2) / 2)
    both_mixed = SeparableDecomposition(ProbabilityDistribution([0.5, 0.5]), [mixed, mixed], [mixed, mixed])
    assert np.allclose(build_separable(both_mixed).matrix, np.eye(4) / 4)

def test_build_separable_rejects_mixed_dimensions():
    dec = SeparableDecomposition(
        ProbabilityDistribution([0.5, 0.5]),
        [pure_density(2, 0), pure_density(3, 0)],
        [pure_density(2, 0), pure_density(2, 0)],
    )
    with pytest.raises(DimensionError):
        build_separable(dec)

def test_separable_decomposition_lengths():
    with pytest.raises(DimensionError):
        SeparableDecomposition(ProbabilityDistribution([1.0]), [pure_density(2, 0)], [])

def test_random_separable_states_are_valid():
    for seed in range(300):
        rng = make_rng(seed)
        d1, d2 = (int(d) for d in rng.integers(1, 4, size=2))
        dec = random_separable_decomposition(d1, d2, rng)
        assert 1 <= len(dec) <= 5
        rho = build_separable(dec)
        validate_density(rho.matrix, d1, d2)

def test_mix_examples():
    rho = random_mixed_state(2, 2, 1)
    assert np.allclose(mix(rho, rho, 0.3).matrix, rho.matrix)

    p00 = projector(basis_state(2, 2, 0, 0))
    p11 = projector(basis_state(2, 2, 1, 1))
    assert np.array_equal(mix(p00, p11, 0.5).matrix, np.diag([0.5, 0, 0, 0.5]).astype(complex))
    assert np.array_equal(mix(p00, p11, 1.0).matrix, p00.matrix)

def test_mix_rejects_bad_input():
    rho = random_mixed_state(2, 2, 1)
    with pytest.raises(ValueError):
        mix(rho, rho, 1.5)
    with pytest.raises(DimensionError):
        mix(rho, random_mixed_state(2, 3, 1), 0.5)

def test_random_pure_state_determinism_and_moments():
    assert np.array_equal(random_pure_state(2, 2, 7).amplitudes, random_pure_state(2, 2, 7).amplitudes)
    assert abs(abs(random_pure_state(1, 1, 3).amplitudes[0]) - 1) < 1e-12

    rng = make_rng(2024)
    moduli = np.array([np.abs(random_pure_state(2, 2, rng).amplitudes) ** 2 for _ in range(10_000)])
    assert np.allclose(moduli.mean(axis=0), 0.25, atol=0.02)

def test_random_pure_state_dimension_cap():
    with pytest.raises(DimensionError):
        random_pure_state(16, 17, 0)

def test_negative_seed_is_rejected():
    with pytest.raises(ValueError):
        random_pure_state(2, 2, -1)

def test_random_local_unitary():
    u1 = random_local_unitary(1, 5)
    assert u1.shape == (1, 1)
    assert abs(abs(u1[0, 0]) - 1) < 1e-12

    for d in range(2, 6):
        u = random_local_unitary(d, d)
        assert np.max(np.abs(u.conj().T @ u - np.eye(d))) < 1e-10
    assert np.array_equal(random_local_unitary(3, 9), random_local_unitary(3, 9))

def test_random_ensembles_are_valid():
    rho = random_density_operator(3, 1)
    assert rho.d2 == 1 and rho.dim == 3
    assert abs(random_distribution(5, 2).weights.sum() - 1) < 1e-12
    assert abs(np.sum(np.abs(random_amplitudes(4, 3).amplitudes) ** 2) - 1) < 1e-12
    assert random_mixed_state(2, 3, 4).matrix.shape == (6, 6)

def test_embed_state_examples(bell):
    embedded = embed_state(bell, 3, 3)
    expected = np.zeros(9)
    expected[[0, 4]] = 1 / np.sqrt(2)
    assert np.allclose(embedded.amplitudes, expected)

    psi = random_pure_state(2, 3, 8)
    assert np.array_equal(embed_state(psi, 2, 3).amplitudes, psi.amplitudes)
    assert abs(np.linalg.norm(embed_state(psi, 4, 5).amplitudes) - 1) < 1e-12

    with pytest.raises(DimensionError):
        embed_state(psi, 1, 3)

def test_embedding_keeps_schmidt_coefficients():
    for seed in range(50):
        psi = random_pure_state(3, 2, seed)
        assert np.allclose(schmidt_coefficients(embed_state(psi, 5, 4)), schmidt_coefficients(psi), atol=1e-10)

def test_embed_density_is_block_extension():
    rho = random_mixed_state(2, 2, 3)
    big = embed_density(rho, 3, 3)
    # |i>|j> -> index i*3 + j in the larger space
    keep = [0, 1, 3, 4]
    assert np.allclose(big.matrix[np.ix_(keep, keep)], rho.matrix)
    assert abs(np.trace(big.matrix) - 1) < 1e-12

def test_local_operations():
    psi = random_pure_state(2, 3, 1)
    u = random_local_unitary(2, 2)
    v = random_local_unitary(3, 3)
    moved = apply_local(psi, u, v)
    assert np.allclose(moved.amplitudes, np.kron(u, v) @ psi.amplitudes)
    assert np.allclose(conjugate_local(projector(psi), u, v).matrix, projector(moved).matrix)

    with pytest.raises(DimensionError):
        apply_local(psi, v, u)

def test_product_and_entangled_builders():
    psi = product_state([1, 1], [1, 0, 0])
    assert (psi.d1, psi.d2) == (2, 3)
    assert np.allclose(psi.amplitudes, [1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2), 0, 0])
    assert np.allclose(schmidt_coefficients(maximally_entangled(3)), [1 / 3] * 3)

def test_validate_density_examples():
    assert validate_density(np.eye(4) / 4, 2, 2).dim == 4
    assert validate_density(np.diag([0.5, 0.5, 0, 0]), 2, 2).dim == 4

    # diag(2, -1, 0, 0) has trace 1: only the negative eigenvalue is violated
    with pytest.raises(DensityValidationError) as e:
        validate_density(np.diag([2, -1, 0, 0]), 2, 2)
    assert e.value.violations == ["negative-eigenvalue"]

def test_validate_density_reports_each_violation():
    with pytest.raises(DensityValidationError) as e:
        validate_density(np.diag([3, -1, 0, 0]), 2, 2)
    assert e.value.violations == ["negative-eigenvalue", "wrong-trace"]

    with pytest.raises(DensityValidationError) as e:
        validate_density([[0.5, 0.5], [0, 0.5]], 2, 1)
    assert "non-hermitian" in e.value.violations

    with pytest.raises(DimensionError):
        validate_density(np.eye(3) / 3, 2, 2)

def test_distribution_validation():
    with pytest.raises(StateValidationError):
        ProbabilityDistribution([0.5, 0.6])
    with pytest.raises(StateValidationError):
        ProbabilityDistribution([1.5, -0.5])
    with pytest.raises(StateValidationError):
        AmplitudeDistribution([1, 1])
    assert len(AmplitudeDistribution([1j])) == 1

def test_state_files_round_trip(tmp_path, bell):
    path = tmp_path / "bell.json"
    write_state(path, bell)
    data = json.loads(path.read_text())
    assert data["kind"] == "pure"
    assert data["d1"] == 2 and data["d2"] == 2
    assert np.allclose(load_state(path).amplitudes, bell.amplitudes, rtol=0, atol=1e-15)

    rho = random_mixed_state(2, 3, 5)
    path = tmp_path / "rho.json"
    write_state(path, rho)
    assert np.array_equal(load_state(path).matrix, rho.matrix)

def test_state_file_errors(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(StateFileError):
        load_state(path)

    with pytest.raises(StateFileError, match="kind"):
        state_from_json({"kind": "weird", "d1": 2, "d2": 2})
    with pytest.raises(StateFileError, match="d1"):
        state_from_json({"kind": "pure", "d1": 0, "d2": 2, "amplitudes": [[1, 0]]})
    with pytest.raises(StateFileError, match=r"^amplitudes: expected 4 amplitudes"):
        state_from_json({"kind": "pure", "d1": 2, "d2": 2, "amplitudes": [[1, 0], [0, 0], [0, 0]]})
    with pytest.raises(StateFileError, match=r"^amplitudes: state vector has norm"):
        state_from_json({"kind": "pure", "d1": 1, "d2": 2, "amplitudes": [[1, 0], [1, 0]]})
    with pytest.raises(StateFileError, match=r"^matrix: "):
        state_from_json({"kind": "mixed", "d1": 1, "d2": 2, "matrix": [[[2, 0], [0, 0]], [[0, 0], [0, 0]]]})

def test_state_json_keeps_full_precision():
    psi = random_pure_state(3, 3, 12)
    restored = state_from_json(json.loads(json.dumps(state_to_json(psi))))
    assert np.allclose(restored.amplitudes, psi.amplitudes, rtol=0, atol=1e-15)
