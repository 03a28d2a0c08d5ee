"""
Deterministic constructions on bipartite states: projectors, separable
states, convex mixing, embeddings into larger spaces and local operations.
"""

from typing import Sequence
import logging

import numpy as np

from src.errors import DimensionError
from src.linalg.ops import kron, as_complex_matrix
from src.states.models import (
    StateVector,
    DensityOperator,
    SeparableDecomposition,
)

logger = logging.getLogger(__name__)


def projector(psi: StateVector) -> DensityOperator:
    """Rank-one projector P_psi = psi psi^dagger."""
    amps = psi.amplitudes
    return DensityOperator(psi.d1, psi.d2, np.outer(amps, amps.conj()))


def basis_state(d1: int, d2: int, i: int, j: int) -> StateVector:
    """The product basis vector |i>|j>."""
    amps = np.zeros(d1 * d2, dtype=np.complex128)
    amps[i * d2 + j] = 1.0
    return StateVector(d1, d2, amps)


def product_state(a: Sequence[complex], b: Sequence[complex]) -> StateVector:
    """Simple tensor a (x) b; both factors are normalized first."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    return StateVector(a.size, b.size, np.kron(a, b))


def maximally_entangled(d: int) -> StateVector:
    """(1/sqrt(d)) sum_i |i>|i> on a d x d system."""
    amps = np.eye(d, dtype=np.complex128).reshape(-1) / np.sqrt(d)
    return StateVector(d, d, amps)


def bell_state() -> StateVector:
    """(|00> + |11>)/sqrt(2)."""
    return maximally_entangled(2)


def build_separable(dec: SeparableDecomposition) -> DensityOperator:
    """
    Assemble sum_i w_i rho1_i (x) rho2_i.

    Raises:
        DimensionError: left factors (or right factors) of differing dimension
    """
    left_dims = {factor.dim for factor in dec.left_factors}
    right_dims = {factor.dim for factor in dec.right_factors}
    if len(left_dims) != 1 or len(right_dims) != 1:
        raise DimensionError(
            f"separable factors must share dimensions, got left {sorted(left_dims)} "
            f"and right {sorted(right_dims)}"
        )
    d1, d2 = left_dims.pop(), right_dims.pop()

    total = np.zeros((d1 * d2, d1 * d2), dtype=np.complex128)
    for w, left, right in zip(dec.weights.weights, dec.left_factors, dec.right_factors):
        total += w * kron(left.matrix, right.matrix)
    return DensityOperator(d1, d2, total)


def mix(sigma: DensityOperator, tau: DensityOperator, eta: float) -> DensityOperator:
    """Convex combination eta*sigma + (1 - eta)*tau."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"mixing weight eta must lie in [0, 1], got {eta}")
    if (sigma.d1, sigma.d2) != (tau.d1, tau.d2):
        raise DimensionError(
            f"cannot mix states on ({sigma.d1}, {sigma.d2}) and ({tau.d1}, {tau.d2})"
        )
    return DensityOperator(sigma.d1, sigma.d2, eta * sigma.matrix + (1.0 - eta) * tau.matrix)


def _check_embedding(d1: int, d2: int, big_d1: int, big_d2: int):
    if big_d1 < d1 or big_d2 < d2:
        raise DimensionError(f"cannot embed ({d1}, {d2}) into smaller ({big_d1}, {big_d2})")


def embed_state(psi: StateVector, big_d1: int, big_d2: int) -> StateVector:
    """Zero-pad psi into the larger space C^big_d1 (x) C^big_d2."""
    _check_embedding(psi.d1, psi.d2, big_d1, big_d2)
    padded = np.zeros((big_d1, big_d2), dtype=np.complex128)
    padded[: psi.d1, : psi.d2] = psi.amplitude_matrix()
    return StateVector(big_d1, big_d2, padded.reshape(-1))


def embed_density(rho: DensityOperator, big_d1: int, big_d2: int) -> DensityOperator:
    """Block extension of rho into the larger space, zeros outside the block."""
    _check_embedding(rho.d1, rho.d2, big_d1, big_d2)
    small = rho.matrix.reshape(rho.d1, rho.d2, rho.d1, rho.d2)
    big = np.zeros((big_d1, big_d2, big_d1, big_d2), dtype=np.complex128)
    big[: rho.d1, : rho.d2, : rho.d1, : rho.d2] = small
    size = big_d1 * big_d2
    return DensityOperator(big_d1, big_d2, big.reshape(size, size))


def apply_local(psi: StateVector, u, v) -> StateVector:
    """(U (x) V) psi, computed as U A V^T on the amplitude matrix A."""
    u = as_complex_matrix(u)
    v = as_complex_matrix(v)
    if u.shape != (psi.d1, psi.d1) or v.shape != (psi.d2, psi.d2):
        raise DimensionError(
            f"local operators {u.shape} and {v.shape} do not act on ({psi.d1}, {psi.d2})"
        )
    transformed = u @ psi.amplitude_matrix() @ v.T
    return StateVector(psi.d1, psi.d2, transformed.reshape(-1))


def conjugate_local(rho: DensityOperator, u, v) -> DensityOperator:
    """(U (x) V) rho (U (x) V)^dagger."""
    w = kron(u, v)
    if w.shape != (rho.dim, rho.dim):
        raise DimensionError(f"local operator of size {w.shape} does not act on ({rho.d1}, {rho.d2})")
    return DensityOperator(rho.d1, rho.d2, w @ rho.matrix @ w.conj().T)


def validate_density(matrix, d1: int, d2: int) -> DensityOperator:
    """
    Check that ``matrix`` is a density operator on C^d1 (x) C^d2.

    Raises:
        DensityValidationError: with every violated property listed
            (non-hermitian / negative-eigenvalue / wrong-trace)
        DimensionError: matrix size differs from d1*d2
    """
    m = as_complex_matrix(matrix)
    return DensityOperator(d1, d2, m)
