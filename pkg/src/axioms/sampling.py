"""
Shared machinery for the sampled audits: substream ids, the worst-case
reducer, block placement for Schmidt-orthogonal families and the
perturbations used by the continuity scans.
"""

from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from src.reports.models import AxiomReport, VIOLATION_CEILING
from src.measures.registry import EntanglementMeasure
from src.states.models import StateVector, DensityOperator

logger = logging.getLogger(__name__)

# One substream family per audit, so audits never share draws
STREAMS: Dict[str, int] = {
    "P1": 1, "P2": 2, "P3": 3, "P4": 4,
    "M1": 11, "M2": 12, "M3": 13, "M4": 14, "M5": 15,
    "L4": 21, "L7": 22, "PROP6": 31,
}


def finite_or_ceiling(value: float) -> float:
    value = float(value)
    return value if np.isfinite(value) else VIOLATION_CEILING


class WorstCase:
    """
    Running maximum over audit cases.

    Ties keep the earliest case, so the result depends only on the case
    indexing and not on evaluation order. Witnesses are built lazily, only
    when a case becomes the new maximum.
    """

    def __init__(self):
        self.violation = 0.0
        self.witness: Dict[str, Any] = {}
        self.details: Dict[str, Any] = {}
        self.count = 0

    def offer(self, violation: float, witness: Callable[[], Dict[str, Any]],
              details: Optional[Dict[str, Any]] = None):
        violation = finite_or_ceiling(violation)
        if self.count == 0 or violation > self.violation:
            self.violation = violation
            self.witness = witness()
            self.details = dict(details or {})
            logger.debug(f"case {self.count}: new worst violation {violation:.3e}")
        self.count += 1

    def report(self, axiom: str, measure: EntanglementMeasure, tol: float, seed: Optional[int]) -> AxiomReport:
        report = AxiomReport.from_violation(
            axiom, self.violation, tol, samples=self.count, seed=seed, measure=measure.name,
            witness=self.witness, details=self.details,
        )
        return logged(report)


def draw_dims(rng: np.random.Generator, low: int, high: int) -> Tuple[int, int]:
    """Two independent dimensions in [low, high]."""
    d1, d2 = rng.integers(low, high + 1, size=2)
    return int(d1), int(d2)


def place_block(psi: StateVector, row: int, col: int, big_d1: int, big_d2: int) -> StateVector:
    """Copy psi's amplitude matrix into rows row.. and columns col.. of a big_d1 x big_d2 system."""
    block = np.zeros((big_d1, big_d2), dtype=np.complex128)
    block[row: row + psi.d1, col: col + psi.d2] = psi.amplitude_matrix()
    return StateVector(big_d1, big_d2, block.reshape(-1))


def diagonal_blocks(states: Sequence[StateVector]) -> List[StateVector]:
    """
    Lay states out on disjoint diagonal blocks of one system.

    States on disjoint row and column blocks are Schmidt orthogonal by construction.
    """
    big_d1 = sum(s.d1 for s in states)
    big_d2 = sum(s.d2 for s in states)
    placed, row, col = [], 0, 0
    for s in states:
        placed.append(place_block(s, row, col, big_d1, big_d2))
        row, col = row + s.d1, col + s.d2
    return placed


def unit_direction(rng: np.random.Generator, shape) -> np.ndarray:
    """Complex Gaussian array scaled to unit Frobenius norm."""
    z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return z / np.linalg.norm(z)


def perturb_state(psi: StateVector, direction: np.ndarray, delta: float) -> StateVector:
    """Normalized psi + delta * direction."""
    moved = psi.amplitudes + delta * np.asarray(direction)
    return StateVector(psi.d1, psi.d2, moved / np.linalg.norm(moved))


def perturb_density(rho: DensityOperator, generator: np.ndarray, delta: float) -> DensityOperator:
    """K rho K^dagger / Tr(K rho K^dagger) with K = I + delta * generator."""
    k = np.eye(rho.dim, dtype=np.complex128) + delta * np.asarray(generator)
    moved = k @ rho.matrix @ k.conj().T
    moved = 0.5 * (moved + moved.conj().T)
    return DensityOperator(rho.d1, rho.d2, moved / np.trace(moved).real)


def logged(report: AxiomReport) -> AxiomReport:
    """Log a finished report and hand it back."""
    log = logger.info if report.passed else logger.warning
    log(f"{report.measure or '-'} {report.axiom}: passed={report.passed} samples={report.samples} "
        f"worst={report.worst_violation:.3e}")
    return report
