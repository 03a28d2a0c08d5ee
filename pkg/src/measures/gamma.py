"""
Greatest cross norm of pure-state projectors and the entanglement measure
built on it.

Only the pure-state closed form ||P_psi||_gamma = (sum_i sqrt(p_i))^2 is
available; the infimum over decompositions for general mixed states is not
computed.
"""

import numpy as np

from src.schmidt.decomposition import schmidt_coefficients
from src.states.models import StateVector


def gamma_norm_pure(psi: StateVector) -> float:
    """(sum_i sqrt(p_i))^2 over the Schmidt coefficients; in [1, min(d1, d2)]."""
    g = float(np.sum(np.sqrt(schmidt_coefficients(psi))) ** 2)
    return max(g, 1.0)


def gamma_measure_pure(psi: StateVector) -> float:
    """g ln g with g the greatest cross norm of P_psi."""
    g = gamma_norm_pure(psi)
    return g * float(np.log(g))
