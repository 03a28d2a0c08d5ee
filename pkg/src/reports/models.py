"""
Report models shared by every audit.
"""

import sys
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

# JSON has no infinity; non-finite violations are reported as this value.
VIOLATION_CEILING = sys.float_info.max


class AxiomReport(BaseModel):
    """Outcome of auditing one postulate."""
    model_config = ConfigDict(frozen=True)

    axiom: str
    passed: bool
    samples: int = Field(ge=0)
    worst_violation: float = Field(ge=0)
    tolerance: float = Field(gt=0)
    witness: Dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    measure: Optional[str] = None
    applicable: bool = True
    details: Dict[str, Any] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _passed_matches_violation(self):
        if self.applicable and self.passed != (self.worst_violation <= self.tolerance):
            raise ValueError("passed must equal worst_violation <= tolerance")
        return self

    @classmethod
    def from_violation(cls, axiom: str, worst_violation: float, tolerance: float, **fields) -> "AxiomReport":
        """Build a report whose pass flag follows from the violation."""
        worst = float(worst_violation)
        if not worst == worst or worst > VIOLATION_CEILING:
            worst = VIOLATION_CEILING
        worst = max(worst, 0.0)
        return cls(axiom=axiom, passed=worst <= tolerance, worst_violation=worst,
                   tolerance=tolerance, **fields)

    @classmethod
    def not_applicable(cls, axiom: str, tolerance: float, reason: str, **fields) -> "AxiomReport":
        """Report for an audit that cannot run on the given measure."""
        return cls(axiom=axiom, passed=True, samples=0, worst_violation=0.0, tolerance=tolerance,
                   applicable=False, details={"reason": reason}, **fields)


class ConstantEstimate(BaseModel):
    """Estimate of c in E = c * S_vN over sampled pure states."""
    model_config = ConfigDict(frozen=True)

    c_mean: float
    c_max_deviation: float = Field(ge=0)
    samples: int = Field(ge=0)
    excluded_low_entropy: int = Field(ge=0)
    measure: Optional[str] = None
    seed: Optional[int] = None
    witness: Dict[str, Any] = Field(default_factory=dict)
