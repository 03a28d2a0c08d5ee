"""
Seeded random ensembles of states and local unitaries.

Every sampler takes either a non-negative integer seed or a
``numpy.random.Generator``. Integer seeds build a PCG64 generator, so a given
seed produces the same draws on every platform and numpy release that keeps
PCG64 stable. Audits derive one independent substream per sample with
``substream(seed, stream, index)``; no sampler touches global random state.
"""

from typing import Union, Optional
import logging

import numpy as np
from scipy.linalg import qr

from src.config import MAX_COMPOSITE_DIM, MAX_SEPARABLE_TERMS
from src.errors import DimensionError
from src.states.models import (
    StateVector,
    DensityOperator,
    ProbabilityDistribution,
    AmplitudeDistribution,
    SeparableDecomposition,
)

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.Generator]


def make_rng(seed: Seed) -> np.random.Generator:
    """Return ``seed`` if it already is a Generator, else a PCG64 generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    seed = int(seed)
    if seed < 0 or seed >= 2**64:
        raise ValueError(f"seed must be a non-negative 64-bit integer, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def substream(seed: int, *keys: int) -> np.random.Generator:
    """Independent generator for (seed, keys...), e.g. one per audit sample."""
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in keys))
    return np.random.Generator(np.random.PCG64(sequence))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_pure_state(d1: int, d2: int, seed: Seed) -> StateVector:
    """Haar-random pure state: normalized vector of i.i.d. complex Gaussians."""
    if d1 < 1 or d2 < 1:
        raise DimensionError(f"dimensions must be positive, got ({d1}, {d2})")
    if d1 * d2 > MAX_COMPOSITE_DIM:
        raise DimensionError(f"composite dimension {d1 * d2} exceeds {MAX_COMPOSITE_DIM}")
    rng = make_rng(seed)
    z = _complex_gaussian(rng, d1 * d2)
    return StateVector(d1, d2, z / np.linalg.norm(z))


def random_local_unitary(d: int, seed: Seed) -> np.ndarray:
    """
    Haar-random d x d unitary.

    QR of a complex Ginibre matrix, with the columns of Q rephased so that
    R has a real positive diagonal.
    """
    if d < 1:
        raise DimensionError(f"dimension must be positive, got {d}")
    rng = make_rng(seed)
    z = _complex_gaussian(rng, (d, d))
    q, r = qr(z)
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def random_density_operator(d: int, seed: Seed) -> DensityOperator:
    """Ginibre-induced density operator G G^dagger / Tr(G G^dagger) on C^d."""
    rng = make_rng(seed)
    g = _complex_gaussian(rng, (d, d))
    rho = g @ g.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return DensityOperator(d, 1, rho / np.trace(rho).real)


def random_distribution(n: int, seed: Seed) -> ProbabilityDistribution:
    """Uniform draw from the probability simplex of length n."""
    rng = make_rng(seed)
    p = rng.dirichlet(np.ones(n))
    return ProbabilityDistribution(p / p.sum())


def random_amplitudes(n: int, seed: Seed) -> AmplitudeDistribution:
    """Normalized complex Gaussian amplitudes of length n."""
    rng = make_rng(seed)
    z = _complex_gaussian(rng, n)
    return AmplitudeDistribution(z / np.linalg.norm(z))


def random_separable_decomposition(
    d1: int, d2: int, seed: Seed, terms: Optional[int] = None
) -> SeparableDecomposition:
    """Random decomposition with ``terms`` product terms (1..5 drawn if None)."""
    rng = make_rng(seed)
    if terms is None:
        terms = int(rng.integers(1, MAX_SEPARABLE_TERMS + 1))
    weights = random_distribution(terms, rng)
    left = [random_density_operator(d1, rng) for _ in range(terms)]
    right = [random_density_operator(d2, rng) for _ in range(terms)]
    return SeparableDecomposition(weights, left, right)


def random_mixed_state(
    d1: int, d2: int, seed: Seed, components: Optional[int] = None
) -> DensityOperator:
    """Random mixture of ``components`` Haar-random pure states (1..3 if None)."""
    rng = make_rng(seed)
    if components is None:
        components = int(rng.integers(1, 4))
    weights = random_distribution(components, rng).weights
    size = d1 * d2
    rho = np.zeros((size, size), dtype=np.complex128)
    for w in weights:
        amps = random_pure_state(d1, d2, rng).amplitudes
        rho += w * np.outer(amps, amps.conj())
    return DensityOperator(d1, d2, rho)
