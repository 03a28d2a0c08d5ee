"""
Shannon entropy on the probability simplex, in nats by default.
"""

from enum import Enum
from typing import Sequence, Union

import numpy as np
from scipy.special import entr

from src.states.models import ProbabilityDistribution


class EntropyUnit(str, Enum):
    """Entropy units; audits always compare in nats."""
    NAT = "nat"
    BIT = "bit"


Base = Union[EntropyUnit, str]


def to_unit(value_nats: float, base: Base = EntropyUnit.NAT) -> float:
    """Convert a value in nats to ``base``."""
    unit = EntropyUnit(base)
    if unit is EntropyUnit.BIT:
        return value_nats / np.log(2.0)
    return value_nats


def spectrum_entropy(values: Sequence[float]) -> float:
    """
    -sum x ln x over a spectrum, values clamped to [0, 1] first (0 ln 0 = 0).

    No normalization check: used for eigenvalues of reduced operators, which
    carry roundoff in their sum.
    """
    clamped = np.clip(np.asarray(values, dtype=np.float64), 0.0, 1.0)
    return float(np.sum(entr(clamped)))


def shannon(p: Union[ProbabilityDistribution, Sequence[float]], base: Base = EntropyUnit.NAT) -> float:
    """
    Shannon entropy -sum p_i ln p_i.

    Args:
        p: probability distribution (validated if given as a plain sequence)
        base: 'nat' or 'bit'
    """
    if not isinstance(p, ProbabilityDistribution):
        p = ProbabilityDistribution(p)
    return to_unit(float(np.sum(entr(p.weights))), base)
