import pytest
import numpy as np
from src.config import EIGEN_RECONSTRUCTION_TOL
from src.errors import DimensionError, HermiticityError
from src.linalg.ops import (
    hermitian_deviation,
    kron,
    partial_trace,
    hermitian_eigensystem,
    eigenvalues_hermitian,
    singular_values,
    as_complex_matrix,
)

def random_hermitian(rng, d):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return z + z.conj().T

def random_unit_vector(rng, n):
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return z / np.linalg.norm(z)

def test_kron_examples():
    assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    column = kron([[0, 1], [1, 0]], [[1], [0]])
    assert column.shape == (4, 1)
    assert np.array_equal(column.real.ravel(), [0, 0, 1, 0])

    assert np.array_equal(kron(np.diag([2, 3]), np.diag([5, 7])), np.diag([10, 14, 15, 21]))

def test_kron_is_associative_on_integer_matrices():
    rng = np.random.default_rng(3)
    a, b, c = (rng.integers(-3, 4, size=(2, 2)) for _ in range(3))
    assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))

def test_kron_rejects_oversized_products():
    with pytest.raises(DimensionError):
        kron(np.eye(17), np.eye(16))

def test_as_complex_matrix_rejects_non_finite():
    with pytest.raises(ValueError):
        as_complex_matrix([[1.0, np.nan]])

def test_partial_trace_examples():
    assert np.allclose(partial_trace(np.eye(4) / 4, 2, 2, "second"), np.eye(2) / 2)

    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert np.allclose(partial_trace(np.outer(bell, bell), 2, 2, "second"), np.diag([0.5, 0.5]))

    # |0>|1>: tracing out the first factor leaves |1><1|
    product = np.zeros(4)
    product[1] = 1.0
    assert np.allclose(partial_trace(np.outer(product, product), 2, 2, "first"), np.diag([0, 1]))

def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(4), 2, 3)
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), 2, 2, "middle")

def test_partial_trace_preserves_trace():
    rng = np.random.default_rng(11)
    for _ in range(200):
        d1, d2 = rng.integers(1, 5, size=2)
        m = random_hermitian(rng, d1 * d2)
        for side in ("first", "second"):
            assert abs(np.trace(partial_trace(m, d1, d2, side)) - np.trace(m)) < 1e-12 * max(1.0, abs(np.trace(m)))

def test_reduced_spectra_of_pure_states_agree():
    rng = np.random.default_rng(5)
    for _ in range(100):
        d1, d2 = (int(d) for d in rng.integers(1, 5, size=2))
        psi = random_unit_vector(rng, d1 * d2)
        p = np.outer(psi, psi.conj())
        first = eigenvalues_hermitian(partial_trace(p, d1, d2, "first"))
        second = eigenvalues_hermitian(partial_trace(p, d1, d2, "second"))
        n = max(d1, d2)
        first = np.pad(first, (0, n - first.size))
        second = np.pad(second, (0, n - second.size))
        assert np.allclose(np.sort(first), np.sort(second), atol=1e-10)

def test_hermitian_eigensystem_examples():
    assert np.allclose(hermitian_eigensystem(np.diag([0.5, 0.5])).eigenvalues, [0.5, 0.5])
    assert np.allclose(hermitian_eigensystem([[0, 1], [1, 0]]).eigenvalues, [1, -1])

    system = hermitian_eigensystem(np.eye(3))
    assert np.allclose(system.eigenvalues, [1, 1, 1])
    assert np.allclose(system.eigenvectors.conj().T @ system.eigenvectors, np.eye(3))

def test_hermitian_eigensystem_reconstructs():
    rng = np.random.default_rng(7)
    for _ in range(200):
        d = int(rng.integers(2, 9))
        h = random_hermitian(rng, d)
        system = hermitian_eigensystem(h)
        assert np.max(np.abs(system.reconstruct() - h)) < EIGEN_RECONSTRUCTION_TOL * max(1.0, np.max(np.abs(h)))
        assert np.max(np.abs(system.eigenvectors.conj().T @ system.eigenvectors - np.eye(d))) < EIGEN_RECONSTRUCTION_TOL
        assert np.all(np.diff(system.eigenvalues) <= 0)
        assert abs(system.eigenvalues.sum() - np.trace(h).real) < 1e-10 * max(1.0, np.max(np.abs(h)))

def test_eigenvector_phase_convention():
    system = hermitian_eigensystem([[0, 1j], [-1j, 0]])
    for k in range(2):
        column = system.eigenvectors[:, k]
        lead = column[np.flatnonzero(np.abs(column) > 1e-12)[0]]
        assert abs(lead.imag) < 1e-14
        assert lead.real > 0

def test_hermitian_eigensystem_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        hermitian_eigensystem([[0, 1], [0, 0]])
    with pytest.raises(DimensionError):
        hermitian_eigensystem(np.ones((2, 3)))

def test_roundoff_is_symmetrized_away():
    noisy = np.array([[1.0, 0.5 + 1e-11], [0.5, 0.0]])
    assert hermitian_deviation(noisy) == pytest.approx(1e-11, rel=1e-3)
    values = eigenvalues_hermitian(noisy)
    assert np.allclose(values, hermitian_eigensystem(noisy).eigenvalues, atol=1e-14)
    assert np.all(np.isreal(values))
    assert hermitian_deviation(np.eye(2)) == 0.0

def test_singular_values_examples():
    s = 1 / np.sqrt(2)
    assert np.allclose(singular_values([[s, 0], [0, s]]), [s, s])
    assert np.allclose(singular_values([[1, 0], [0, 0]]), [1, 0])
    assert np.allclose(singular_values(np.array([[1, 1], [0, 0]]) / np.sqrt(2)), [1, 0])
    assert singular_values(np.ones((2, 5))).size == 2
