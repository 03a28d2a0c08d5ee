"""
Exception types raised by the toolkit.

All of them derive from ValueError, so callers that only care about
"bad input" can keep catching ValueError.
"""
from typing import List, Optional


class DimensionError(ValueError):
    """Shape mismatch or composite dimension above the supported maximum."""


class HermiticityError(ValueError):
    """Matrix handed to a Hermitian routine is too far from Hermitian."""


class StateValidationError(ValueError):
    """Invalid state vector, probability distribution or amplitude family."""


class DensityValidationError(ValueError):
    """Matrix is not a density operator.

    ``violations`` lists every failed property: ``non-hermitian``,
    ``negative-eigenvalue`` and/or ``wrong-trace``.
    """

    def __init__(self, violations: List[str], detail: Optional[str] = None):
        self.violations = list(violations)
        message = "invalid density operator: " + ", ".join(self.violations)
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class SchmidtOrthogonalityError(ValueError):
    """States passed to a superposition are not mutually Schmidt orthogonal."""


class MeasureError(ValueError):
    """Unknown, malformed or rejected entanglement measure."""


class InsufficientSamplesError(ValueError):
    """No sample survived the filtering needed by an estimator."""


class StateFileError(ValueError):
    """State JSON file could not be parsed."""
