"""
Validated configuration of one CLI run.
"""

from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config import AXIOM_IDS, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOLERANCE, DEMO_KINDS
from src.entropy.khinchin import FUNCTIONALS
from src.entropy.shannon import EntropyUnit
from src.errors import MeasureError
from src.measures.registry import MeasureRegistry, default_registry

Command = Literal["compute", "audit", "demo", "gen", "khinchin"]


class RunConfig(BaseModel):
    """Everything a run needs; unknown names are rejected here, before any computation."""
    model_config = ConfigDict(frozen=True)

    command: Command
    measure: str = "svn"
    axioms: List[str] = Field(default_factory=list)
    samples: int = Field(DEFAULT_SAMPLES, ge=1)
    seed: int = Field(DEFAULT_SEED, ge=0, lt=2**64)
    tolerance: float = Field(DEFAULT_TOLERANCE, gt=0, allow_inf_nan=False)
    base: EntropyUnit = EntropyUnit.NAT
    input_path: Optional[Path] = None
    report_path: Optional[Path] = None
    output_path: Optional[Path] = None
    demo_kind: Optional[str] = None
    functional: str = "shannon"
    d1: Optional[int] = Field(None, ge=1)
    d2: Optional[int] = Field(None, ge=1)
    kind: Literal["pure", "separable"] = "pure"

    @field_validator("axioms")
    @classmethod
    def _known_axioms(cls, axioms: List[str]) -> List[str]:
        unknown = [a for a in axioms if a not in AXIOM_IDS]
        if unknown:
            raise ValueError(f"unknown axiom id(s) {', '.join(unknown)}; expected some of {', '.join(AXIOM_IDS)}")
        return axioms

    @field_validator("measure")
    @classmethod
    def _known_measure(cls, measure: str) -> str:
        try:
            registry().get(measure)
        except MeasureError as e:
            raise ValueError(str(e))
        return measure

    @field_validator("functional")
    @classmethod
    def _known_functional(cls, functional: str) -> str:
        if functional not in FUNCTIONALS:
            raise ValueError(f"unknown functional '{functional}'; expected one of {', '.join(FUNCTIONALS)}")
        return functional

    @model_validator(mode="after")
    def _command_arguments(self):
        if self.command == "compute" and (self.input_path is None) == (self.report_path is None):
            raise ValueError("compute needs exactly one of a state file or a report file")
        if self.command == "audit" and not self.axioms:
            raise ValueError("audit needs at least one axiom")
        if self.command == "demo" and self.demo_kind not in DEMO_KINDS:
            raise ValueError(f"unknown demo '{self.demo_kind}'; expected one of {', '.join(DEMO_KINDS)}")
        if self.command == "gen" and (self.d1 is None or self.d2 is None or self.output_path is None):
            raise ValueError("gen needs d1, d2 and an output file")
        return self


_registry: Optional[MeasureRegistry] = None


def registry() -> MeasureRegistry:
    """The default measure registry, built once per process."""
    global _registry
    if _registry is None:
        _registry = default_registry()
    return _registry
