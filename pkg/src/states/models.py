"""
Value types for bipartite states.

All types are frozen dataclasses holding read-only numpy arrays, so they can be
shared freely between threads.
"""

from dataclasses import dataclass, field
from typing import List
import logging

import numpy as np

from src.config import (
    MAX_COMPOSITE_DIM,
    STATE_RENORMALIZE_WINDOW,
    DENSITY_TOL,
    DISTRIBUTION_SUM_TOL,
)
from src.errors import DimensionError, StateValidationError, DensityValidationError

logger = logging.getLogger(__name__)


def _frozen(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit vector in H1 (x) H2, amplitude of |i>|j> at index i*d2 + j."""
    d1: int
    d2: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1:
            raise DimensionError(f"dimensions must be positive, got ({self.d1}, {self.d2})")
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.size != self.d1 * self.d2:
            raise DimensionError(
                f"expected {self.d1 * self.d2} amplitudes for ({self.d1}, {self.d2}), got {amps.size}"
            )
        if not np.all(np.isfinite(amps)):
            raise StateValidationError("amplitudes must be finite")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > STATE_RENORMALIZE_WINDOW:
            raise StateValidationError(f"state vector has norm {norm:.12g}, expected 1")
        if norm != 1.0:
            amps = amps / norm
        object.__setattr__(self, "amplitudes", _frozen(amps))

    @property
    def dim(self) -> int:
        return self.d1 * self.d2

    def amplitude_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to d1 x d2 (row index belongs to H1)."""
        return self.amplitudes.reshape(self.d1, self.d2)


def density_violations(matrix: np.ndarray, tol: float = DENSITY_TOL) -> List[str]:
    """List the density-operator properties ``matrix`` fails, empty if none."""
    violations = []
    if float(np.max(np.abs(matrix - matrix.conj().T))) > tol:
        violations.append("non-hermitian")
    eigenvalues = np.linalg.eigvalsh(0.5 * (matrix + matrix.conj().T))
    if eigenvalues[0] < -tol:
        violations.append("negative-eigenvalue")
    if abs(np.trace(matrix) - 1.0) > tol:
        violations.append("wrong-trace")
    return violations


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Positive, unit-trace Hermitian operator on H1 (x) H2.

    A density operator on a single factor is represented with d2 = 1.
    """
    d1: int
    d2: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.d1 < 1 or self.d2 < 1:
            raise DimensionError(f"dimensions must be positive, got ({self.d1}, {self.d2})")
        size = self.d1 * self.d2
        if size > MAX_COMPOSITE_DIM:
            raise DimensionError(f"composite dimension {size} exceeds {MAX_COMPOSITE_DIM}")
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (size, size):
            raise DimensionError(f"expected a {size}x{size} matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DensityValidationError(["non-finite"], "matrix entries must be finite")
        violations = density_violations(m)
        if violations:
            raise DensityValidationError(violations)
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.d1 * self.d2


@dataclass(frozen=True, eq=False)
class ProbabilityDistribution:
    """Finite probability distribution (p_1, ..., p_n)."""
    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=np.float64).reshape(-1)
        if w.size == 0:
            raise StateValidationError("probability distribution must not be empty")
        if not np.all(np.isfinite(w)) or np.any(w < 0):
            raise StateValidationError("probabilities must be finite and non-negative")
        total = float(w.sum())
        if abs(total - 1.0) > DISTRIBUTION_SUM_TOL:
            raise StateValidationError(f"probabilities sum to {total!r}, expected 1")
        object.__setattr__(self, "weights", _frozen(w))

    def __len__(self) -> int:
        return self.weights.size


@dataclass(frozen=True, eq=False)
class AmplitudeDistribution:
    """Complex amplitudes lambda_i with sum |lambda_i|^2 = 1."""
    amplitudes: np.ndarray

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if a.size == 0:
            raise StateValidationError("amplitude distribution must not be empty")
        if not np.all(np.isfinite(a)):
            raise StateValidationError("amplitudes must be finite")
        total = float(np.sum(np.abs(a) ** 2))
        if abs(total - 1.0) > DISTRIBUTION_SUM_TOL:
            raise StateValidationError(f"squared amplitudes sum to {total!r}, expected 1")
        object.__setattr__(self, "amplitudes", _frozen(a))

    def __len__(self) -> int:
        return self.amplitudes.size

    def probabilities(self) -> np.ndarray:
        """The weights |lambda_i|^2."""
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    """Finite decomposition sum_i w_i rho1_i (x) rho2_i of a separable state."""
    weights: ProbabilityDistribution
    left_factors: List[DensityOperator] = field(default_factory=list)
    right_factors: List[DensityOperator] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.weights)
        if len(self.left_factors) != n or len(self.right_factors) != n:
            raise DimensionError(
                f"decomposition has {n} weights, {len(self.left_factors)} left and "
                f"{len(self.right_factors)} right factors"
            )
        object.__setattr__(self, "left_factors", list(self.left_factors))
        object.__setattr__(self, "right_factors", list(self.right_factors))

    def __len__(self) -> int:
        return len(self.weights)
