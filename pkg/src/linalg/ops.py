"""
Dense complex linear algebra used by every other module:
Kronecker products, partial traces, Hermitian eigensystems and singular values.

Composite index convention: basis vector |i>|j> of H1 (x) H2 sits at i*d2 + j,
so the first factor is the slow index.
"""

from dataclasses import dataclass
from typing import Literal
import logging

import numpy as np

from src.config import (
    MAX_COMPOSITE_DIM,
    HERMITIAN_INPUT_TOL,
    HERMITIAN_SYMMETRIZE_TOL,
)
from src.errors import DimensionError, HermiticityError

logger = logging.getLogger(__name__)

TracedSide = Literal["first", "second"]

_PHASE_EPS = 1e-12


def as_complex_matrix(data) -> np.ndarray:
    """Coerce ``data`` to a finite 2-D complex128 array."""
    matrix = np.asarray(data, dtype=np.complex128)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise DimensionError(f"expected a non-empty 2-D matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix entries must be finite")
    return matrix


def _check_square(matrix: np.ndarray) -> int:
    rows, cols = matrix.shape
    if rows != cols:
        raise DimensionError(f"expected a square matrix, got {rows}x{cols}")
    return rows


@dataclass(frozen=True, eq=False)
class HermitianEigensystem:
    """Spectral decomposition H = V diag(eigenvalues) V^dagger.

    Eigenvalues are sorted descending; each eigenvector column has its first
    non-negligible component made real positive.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        """Return V diag(lambda) V^dagger."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def kron(a, b) -> np.ndarray:
    """
    Kronecker product of two matrices.

    Args:
        a: left factor (rows_a x cols_a)
        b: right factor (rows_b x cols_b)

    Returns:
        Matrix with entry (i*rows_b + k, j*cols_b + l) equal to a[i, j] * b[k, l]
    """
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > MAX_COMPOSITE_DIM or cols > MAX_COMPOSITE_DIM:
        raise DimensionError(
            f"Kronecker product of size {rows}x{cols} exceeds the maximum "
            f"composite dimension {MAX_COMPOSITE_DIM}"
        )
    return np.kron(a, b)


def partial_trace(matrix, d1: int, d2: int, traced_side: TracedSide = "second") -> np.ndarray:
    """
    Partial trace of an operator on H1 (x) H2.

    Args:
        matrix: (d1*d2) x (d1*d2) operator
        d1: dimension of H1
        d2: dimension of H2
        traced_side: 'second' traces out H2 (result d1 x d1),
            'first' traces out H1 (result d2 x d2)

    Returns:
        Reduced operator on the kept factor
    """
    m = as_complex_matrix(matrix)
    size = _check_square(m)
    if d1 < 1 or d2 < 1 or size != d1 * d2:
        raise DimensionError(f"matrix of size {size} does not match d1*d2 = {d1}*{d2}")
    if size > MAX_COMPOSITE_DIM:
        raise DimensionError(f"composite dimension {size} exceeds {MAX_COMPOSITE_DIM}")

    blocks = m.reshape(d1, d2, d1, d2)
    if traced_side == "second":
        return np.einsum("ijkj->ik", blocks)
    if traced_side == "first":
        return np.einsum("ijil->jl", blocks)
    raise ValueError(f"traced_side must be 'first' or 'second', got {traced_side!r}")


def hermitian_deviation(matrix) -> float:
    """Largest absolute entry of H - H^dagger."""
    m = as_complex_matrix(matrix)
    _check_square(m)
    return float(np.max(np.abs(m - m.conj().T)))


def _symmetrized(matrix) -> np.ndarray:
    h = as_complex_matrix(matrix)
    deviation = hermitian_deviation(h)
    if deviation > HERMITIAN_INPUT_TOL:
        raise HermiticityError(
            f"matrix deviates from Hermitian by {deviation:.3e} (limit {HERMITIAN_INPUT_TOL:g})"
        )
    if deviation > HERMITIAN_SYMMETRIZE_TOL:
        logger.debug(f"symmetrizing roundoff of {deviation:.3e}")
    # eigh reads one triangle only
    return 0.5 * (h + h.conj().T)


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    fixed = vectors.copy()
    for k in range(fixed.shape[1]):
        column = fixed[:, k]
        nonzero = np.flatnonzero(np.abs(column) > _PHASE_EPS)
        if nonzero.size:
            lead = column[nonzero[0]]
            fixed[:, k] = column * (abs(lead) / lead)
    return fixed


def hermitian_eigensystem(matrix) -> HermitianEigensystem:
    """
    Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as (H + H^dagger)/2 before decomposing, which
    absorbs roundoff; a deviation above the input tolerance means the caller
    handed in a non-Hermitian matrix and is rejected.

    Raises:
        DimensionError: non-square input
        HermiticityError: max |H - H^dagger| above 1e-8
    """
    values, vectors = np.linalg.eigh(_symmetrized(matrix))
    order = np.argsort(-values, kind="stable")
    return HermitianEigensystem(
        eigenvalues=values[order],
        eigenvectors=_fix_phases(vectors[:, order]),
    )


def eigenvalues_hermitian(matrix) -> np.ndarray:
    """Descending eigenvalues of a Hermitian matrix (no eigenvectors)."""
    values = np.linalg.eigvalsh(_symmetrized(matrix))
    return values[::-1].copy()


def singular_values(matrix) -> np.ndarray:
    """Singular values in descending order; min(rows, cols) of them."""
    a = as_complex_matrix(matrix)
    return np.linalg.svd(a, compute_uv=False)
