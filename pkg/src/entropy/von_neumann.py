"""
Von Neumann reduced entropy.

For a pure state both reductions share a spectrum and the entropy equals the
Shannon entropy of the Schmidt coefficients. For mixed states the two sides
generally differ; traced_side='second' (keep H1) is the default.
"""

import logging

import numpy as np

from src.entropy.shannon import Base, EntropyUnit, spectrum_entropy, to_unit
from src.linalg.ops import TracedSide, partial_trace, eigenvalues_hermitian
from src.schmidt.decomposition import schmidt_coefficients
from src.states.models import StateVector, DensityOperator

logger = logging.getLogger(__name__)


def reduced_state(rho: DensityOperator, traced_side: TracedSide = "second") -> np.ndarray:
    """Reduced density matrix on the kept factor."""
    return partial_trace(rho.matrix, rho.d1, rho.d2, traced_side)


def reduced_spectrum(rho: DensityOperator, traced_side: TracedSide = "second") -> np.ndarray:
    """Descending eigenvalues of the reduced density matrix."""
    return eigenvalues_hermitian(reduced_state(rho, traced_side))


def svn_pure(psi: StateVector, base: Base = EntropyUnit.NAT) -> float:
    """Entanglement entropy of a pure state from its Schmidt coefficients."""
    return to_unit(spectrum_entropy(schmidt_coefficients(psi)), base)


def svn_mixed(rho: DensityOperator, traced_side: TracedSide = "second",
              base: Base = EntropyUnit.NAT) -> float:
    """
    -Tr(r ln r) for the reduced operator r obtained by tracing out ``traced_side``.

    Evaluated spectrally with eigenvalues clamped to [0, 1].
    """
    return to_unit(spectrum_entropy(reduced_spectrum(rho, traced_side)), base)
