"""
Entanglement measures and the registry the CLI resolves names against.

Built-in measures:
    svn              von Neumann reduced entropy; its mixed evaluator is the
                     reduced entropy of Tr_2(rho). That mixed functional is NOT
                     an entanglement measure on mixed states (it is positive on
                     separable mixtures and not convex); it is registered so the
                     audits can exhibit those failures.
    svn-scaled:<c>   c times svn
    gamma            g ln g with g the greatest cross norm (pure states only)
    shannon-schmidt  Shannon entropy of the Schmidt coefficients (pure only)
"""

from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Optional, Sequence, Union
import logging

import numpy as np

from src.config import (
    SCHMIDT_CUTOFF,
    SIMPLEX_MAX_LENGTH,
    ZERO_PROBE_SAMPLES,
    ZERO_PROBE_THRESHOLD,
    ZERO_PROBE_SEED,
)
from src.entropy.shannon import shannon
from src.entropy.von_neumann import svn_pure, svn_mixed
from src.errors import DimensionError, MeasureError
from src.measures.gamma import gamma_measure_pure
from src.schmidt.decomposition import schmidt_coefficients
from src.states.ensembles import substream, random_pure_state
from src.states.models import StateVector, DensityOperator, ProbabilityDistribution

logger = logging.getLogger(__name__)

SCALED_PREFIX = "svn-scaled:"


@dataclass(frozen=True)
class EntanglementMeasure:
    """A positive functional on pure states, optionally extended to mixed states.

    ``scale_constant`` multiplies both evaluators.
    """
    name: str
    pure_evaluator: Callable[[StateVector], float]
    mixed_evaluator: Optional[Callable[[DensityOperator], float]] = None
    scale_constant: float = 1.0

    def __post_init__(self):
        if not self.scale_constant > 0:
            raise MeasureError(f"scale constant must be positive, got {self.scale_constant}")

    @property
    def has_mixed(self) -> bool:
        return self.mixed_evaluator is not None

    def scaled(self, c: float, name: Optional[str] = None) -> "EntanglementMeasure":
        """Copy of this measure multiplied by c."""
        return replace(self, name=name or f"{self.name}*{c:g}", scale_constant=self.scale_constant * c)


def evaluate_pure(m: EntanglementMeasure, psi: StateVector) -> float:
    """E(psi) in nats."""
    return m.scale_constant * float(m.pure_evaluator(psi))


def evaluate_mixed(m: EntanglementMeasure, rho: DensityOperator) -> float:
    """E(rho) in nats; the measure must have a mixed evaluator."""
    if m.mixed_evaluator is None:
        raise MeasureError(f"measure '{m.name}' has no mixed-state evaluator")
    return m.scale_constant * float(m.mixed_evaluator(rho))


def profile_state(p: Union[ProbabilityDistribution, Sequence[float]]) -> StateVector:
    """
    Canonical pure state with Schmidt coefficients p.

    Zero entries (at or below the Schmidt cutoff) are dropped, then the state
    sum_i sqrt(p_i)|i>|i> is built on an n x n system.
    """
    if not isinstance(p, ProbabilityDistribution):
        p = ProbabilityDistribution(p)
    if len(p) > SIMPLEX_MAX_LENGTH:
        raise DimensionError(f"profile of length {len(p)} exceeds {SIMPLEX_MAX_LENGTH}")
    w = p.weights[p.weights > SCHMIDT_CUTOFF]
    n = w.size
    return StateVector(n, n, np.diag(np.sqrt(w)).reshape(-1))


def schmidt_profile_value(m: EntanglementMeasure, p: Union[ProbabilityDistribution, Sequence[float]]) -> float:
    """E(p_1, ..., p_n): the measure on a state whose Schmidt coefficients are p."""
    return evaluate_pure(m, profile_state(p))


def _shannon_of_schmidt(psi: StateVector) -> float:
    p = schmidt_coefficients(psi)
    return shannon(ProbabilityDistribution(p / p.sum()))


def _svn_reduced(rho: DensityOperator) -> float:
    return svn_mixed(rho, "second")


SVN = EntanglementMeasure("svn", svn_pure, _svn_reduced)
GAMMA = EntanglementMeasure("gamma", gamma_measure_pure)
SHANNON_SCHMIDT = EntanglementMeasure("shannon-schmidt", _shannon_of_schmidt)


class MeasureRegistry:
    """Name -> measure lookup. Read-only once audits start."""

    def __init__(self):
        self._measures: Dict[str, EntanglementMeasure] = {}

    def register(self, measure: EntanglementMeasure, probe: bool = True) -> EntanglementMeasure:
        """
        Add a measure.

        Args:
            measure: measure to add
            probe: reject the identically vanishing functional by evaluating
                the measure on random entangled states

        Raises:
            MeasureError: name already taken, or the probe found no value above 1e-12
        """
        if measure.name in self._measures:
            raise MeasureError(f"measure '{measure.name}' is already registered")
        if probe:
            reject_vanishing(measure)
        self._measures[measure.name] = measure
        logger.info(f"Registered measure '{measure.name}' (mixed evaluator: {measure.has_mixed})")
        return measure

    def get(self, name: str) -> EntanglementMeasure:
        """Look a measure up; ``svn-scaled:<c>`` builds c * svn on the fly."""
        if name in self._measures:
            return self._measures[name]
        if name.startswith(SCALED_PREFIX):
            raw = name[len(SCALED_PREFIX):]
            try:
                c = float(raw)
            except ValueError:
                raise MeasureError(f"measure: cannot parse scale constant '{raw}' in '{name}'")
            if not (np.isfinite(c) and c > 0):
                raise MeasureError(f"measure: scale constant must be positive and finite, got '{raw}'")
            return self.get("svn").scaled(c, name=name)
        raise MeasureError(f"measure: unknown measure '{name}' (known: {', '.join(self.names())})")

    def names(self) -> List[str]:
        return sorted(self._measures)

    def __contains__(self, name: str) -> bool:
        try:
            self.get(name)
        except MeasureError:
            return False
        return True


def reject_vanishing(measure: EntanglementMeasure):
    """Raise MeasureError when E stays below 1e-12 on random entangled states."""
    largest = 0.0
    for index in range(ZERO_PROBE_SAMPLES):
        rng = substream(ZERO_PROBE_SEED, index)
        d = int(rng.integers(2, 5))
        largest = max(largest, abs(evaluate_pure(measure, random_pure_state(d, d, rng))))
        if largest > ZERO_PROBE_THRESHOLD:
            return
    raise MeasureError(f"measure '{measure.name}' vanishes identically on the probe states")


def default_registry() -> MeasureRegistry:
    """Registry holding the built-in measures."""
    registry = MeasureRegistry()
    for measure in (SVN, GAMMA, SHANNON_SCHMIDT):
        registry.register(measure)
    return registry
