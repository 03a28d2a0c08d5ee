"""
JSON state files.

Pure:  {"kind": "pure", "d1": 2, "d2": 2, "amplitudes": [[re, im], ...]}
Mixed: {"kind": "mixed", "d1": 2, "d2": 2, "matrix": [[[re, im], ...], ...]}

Amplitude index is i*d2 + j; matrices are row-major.
"""

from pathlib import Path
from typing import Annotated, List, Literal, Tuple, Union
import json
import logging

import numpy as np
from pydantic import BaseModel, Field, TypeAdapter, ValidationError

from src.errors import StateFileError
from src.states.models import StateVector, DensityOperator

logger = logging.getLogger(__name__)

ComplexPair = Tuple[float, float]


class PureStateFile(BaseModel):
    """Pure state as stored on disk."""
    kind: Literal["pure"]
    d1: int = Field(ge=1)
    d2: int = Field(ge=1)
    amplitudes: List[ComplexPair]


class MixedStateFile(BaseModel):
    """Density operator as stored on disk."""
    kind: Literal["mixed"]
    d1: int = Field(ge=1)
    d2: int = Field(ge=1)
    matrix: List[List[ComplexPair]]


StateFile = Annotated[Union[PureStateFile, MixedStateFile], Field(discriminator="kind")]
_state_adapter = TypeAdapter(StateFile)

State = Union[StateVector, DensityOperator]


def complex_to_pairs(values) -> list:
    """Nested complex array to nested [re, im] lists (full double precision)."""
    array = np.asarray(values, dtype=np.complex128)
    if array.ndim == 0:
        return [float(array.real), float(array.imag)]
    return [complex_to_pairs(item) for item in array]


def pairs_to_complex(pairs) -> np.ndarray:
    """Inverse of ``complex_to_pairs``."""
    array = np.asarray(pairs, dtype=np.float64)
    return array[..., 0] + 1j * array[..., 1]


def state_to_json(state: State) -> dict:
    """Serialize a state in the state-file format."""
    if isinstance(state, StateVector):
        return PureStateFile(
            kind="pure", d1=state.d1, d2=state.d2, amplitudes=complex_to_pairs(state.amplitudes)
        ).model_dump()
    return MixedStateFile(
        kind="mixed", d1=state.d1, d2=state.d2, matrix=complex_to_pairs(state.matrix)
    ).model_dump()


def state_from_json(data: dict) -> State:
    """
    Build a StateVector or DensityOperator from parsed JSON.

    Raises:
        StateFileError: schema violations, naming the offending field
    """
    try:
        parsed = _state_adapter.validate_python(data)
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "state"
        raise StateFileError(f"{location}: {first['msg']}") from e

    if isinstance(parsed, PureStateFile):
        if not parsed.amplitudes:
            raise StateFileError("amplitudes: must not be empty")
        return _build("amplitudes", StateVector, parsed.d1, parsed.d2, pairs_to_complex(parsed.amplitudes))
    if not parsed.matrix or any(len(row) != len(parsed.matrix) for row in parsed.matrix):
        raise StateFileError("matrix: must be a non-empty square array")
    return _build("matrix", DensityOperator, parsed.d1, parsed.d2, pairs_to_complex(parsed.matrix))


def _build(field: str, model, d1: int, d2: int, data: np.ndarray) -> State:
    try:
        return model(d1, d2, data)
    except StateFileError:
        raise
    except ValueError as e:
        raise StateFileError(f"{field}: {e}") from e


def load_state(path: Union[str, Path]) -> State:
    """Read a state file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise StateFileError(f"{path}: malformed JSON ({e.msg} at line {e.lineno})") from e
    state = state_from_json(data)
    logger.info(f"Loaded {data.get('kind')} state ({state.d1}x{state.d2}) from {path}")
    return state


def write_state(path: Union[str, Path], state: State):
    """Write a state file."""
    path = Path(path)
    path.write_text(json.dumps(state_to_json(state), indent=2) + "\n")
    logger.info(f"Wrote state ({state.d1}x{state.d2}) to {path}")
