"""
Schmidt decomposition of bipartite pure states.

psi = sum_i sqrt(p_i) a_i (x) b_i is read off the SVD of the d1 x d2 amplitude
matrix A = U diag(s) V^dagger: p_i = s_i^2, a_i = U[:, i], b_i = Vh[i, :]
(the conjugate of V's column, because A is reshaped with H2 as column index).

Coefficients at or below the zero cutoff are dropped. With degenerate
coefficients the individual vectors are not unique; callers may depend on
the coefficients and on the spanned subspace only.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple
import logging

import numpy as np

from src.config import SCHMIDT_CUTOFF, SCHMIDT_ORTHOGONALITY_TOL, STATE_NORM_TOL
from src.errors import DimensionError, SchmidtOrthogonalityError, StateValidationError
from src.states.models import StateVector, AmplitudeDistribution

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """Schmidt coefficients (descending) with paired orthonormal vectors.

    ``left_basis[:, i]`` is a_i in H1 and ``right_basis[:, i]`` is b_i in H2.
    """
    coefficients: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray

    @property
    def count(self) -> int:
        return self.coefficients.size

    def reconstruct(self) -> np.ndarray:
        """Amplitude vector sum_i sqrt(p_i) a_i (x) b_i."""
        d1 = self.left_basis.shape[0]
        d2 = self.right_basis.shape[0]
        total = np.zeros(d1 * d2, dtype=np.complex128)
        for i in range(self.count):
            total += np.sqrt(self.coefficients[i]) * np.kron(self.left_basis[:, i], self.right_basis[:, i])
        return total


@dataclass(frozen=True, eq=False)
class SchmidtSubspace:
    """Span M(psi) of the products a_i (x) b_i with nonzero coefficient."""
    product_basis: List[Tuple[np.ndarray, np.ndarray]]

    @property
    def dimension(self) -> int:
        return len(self.product_basis)

    def vectors(self) -> np.ndarray:
        """The products a_i (x) b_i as matrix columns."""
        return np.column_stack([np.kron(a, b) for a, b in self.product_basis])


def schmidt_decompose(psi: StateVector) -> SchmidtForm:
    """Schmidt decomposition of psi, coefficients above the cutoff only."""
    u, s, vh = np.linalg.svd(psi.amplitude_matrix())
    p = s ** 2
    keep = p > SCHMIDT_CUTOFF
    return SchmidtForm(
        coefficients=p[keep],
        left_basis=u[:, : s.size][:, keep],
        right_basis=vh[: s.size, :][keep, :].T,
    )


def schmidt_coefficients(psi: StateVector) -> np.ndarray:
    """Nonzero Schmidt coefficients of psi, descending."""
    s = np.linalg.svd(psi.amplitude_matrix(), compute_uv=False)
    p = s ** 2
    return p[p > SCHMIDT_CUTOFF]


def schmidt_rank(psi: StateVector) -> int:
    """Number of Schmidt coefficients above the cutoff."""
    return int(schmidt_coefficients(psi).size)


def schmidt_subspace(psi: StateVector) -> SchmidtSubspace:
    """Schmidt subspace M(psi)."""
    form = schmidt_decompose(psi)
    pairs = [(form.left_basis[:, i], form.right_basis[:, i]) for i in range(form.count)]
    return SchmidtSubspace(product_basis=pairs)


def _check_same_space(states: Sequence[StateVector]):
    shapes = {(s.d1, s.d2) for s in states}
    if len(shapes) > 1:
        raise DimensionError(f"states live on different spaces: {sorted(shapes)}")


def schmidt_orthogonal(psi: StateVector, phi: StateVector) -> bool:
    """
    True iff M(psi) and M(phi) are orthogonal.

    Tested on the spanning products: every |<a_i (x) b_i, c_j (x) d_j>| must be
    below the orthogonality tolerance.

    This does not make the Schmidt bases of psi and phi jointly bi-orthogonal:
    |00> and |01> pass (their products are orthogonal) yet share the factor
    |0> on H1, so their superposition is a product state and the P4 identity
    fails for S_vN on it. The audits place each state in its own block of rows
    and columns (``diagonal_blocks``), where both conditions hold.
    """
    _check_same_space([psi, phi])
    overlaps = schmidt_subspace(psi).vectors().conj().T @ schmidt_subspace(phi).vectors()
    return bool(np.max(np.abs(overlaps)) < SCHMIDT_ORTHOGONALITY_TOL)


def superpose(states: Sequence[StateVector], amplitudes: AmplitudeDistribution) -> StateVector:
    """
    lambda_1 psi_1 + ... + lambda_m psi_m for mutually Schmidt orthogonal psi_i.

    Raises:
        SchmidtOrthogonalityError: some pair of states is not Schmidt orthogonal
        DimensionError: states on different spaces or amplitude count mismatch
    """
    states = list(states)
    if not states:
        raise ValueError("superpose needs at least one state")
    if len(states) != len(amplitudes):
        raise DimensionError(f"{len(states)} states but {len(amplitudes)} amplitudes")
    _check_same_space(states)
    for i in range(len(states)):
        for j in range(i + 1, len(states)):
            if not schmidt_orthogonal(states[i], states[j]):
                raise SchmidtOrthogonalityError(f"states {i} and {j} are not Schmidt orthogonal")

    combined = sum(lam * s.amplitudes for lam, s in zip(amplitudes.amplitudes, states))
    norm = float(np.linalg.norm(combined))
    if abs(norm - 1.0) > STATE_NORM_TOL:
        raise StateValidationError(f"superposition has norm {norm:.12g}; inputs are not orthogonal")
    first = states[0]
    return StateVector(first.d1, first.d2, combined / norm)
