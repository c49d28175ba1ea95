"""
Domain models for SWAP recognition.
"""
from enum import Enum
from typing import FrozenSet, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class SwapKind(str, Enum):
    """The ways a routing SWAP shows up in transpiled output."""
    DIRECT = "direct"
    NAMED_ALIAS = "named_alias"
    UNITARY_MATCH = "unitary_match"
    THREE_CNOT = "three_cnot"
    ISWAP_PHASE = "iswap_phase"
    PAULI_ROTATION_TRIPLE = "pauli_rotation_triple"


# Tie-break order at equal span length
KIND_PRIORITY = {kind: rank for rank, kind in enumerate(SwapKind)}

PATTERN_KINDS = frozenset({SwapKind.THREE_CNOT, SwapKind.ISWAP_PHASE, SwapKind.PAULI_ROTATION_TRIPLE})

# Kinds the synthetic generator can emit for a routing SWAP
EMITTABLE_KINDS = frozenset({
    SwapKind.DIRECT, SwapKind.THREE_CNOT, SwapKind.ISWAP_PHASE, SwapKind.PAULI_ROTATION_TRIPLE,
})

_SPAN_LENGTHS = {
    SwapKind.DIRECT: {1},
    SwapKind.NAMED_ALIAS: {1},
    SwapKind.UNITARY_MATCH: {1},
    SwapKind.THREE_CNOT: {3},
    SwapKind.ISWAP_PHASE: {2, 3},
    SwapKind.PAULI_ROTATION_TRIPLE: {3},
}


class SwapEvent(BaseModel):
    """
    A SWAP detected on one qubit pair.

    `positions` are the stream indices the SWAP consumed, in order; for a
    multi-gate pattern they need not be contiguous, since instructions on
    other qubits may sit between them. `span` runs half-open from the first
    consumed position to one past the last.
    """
    model_config = ConfigDict(frozen=True)

    pair: Tuple[int, int]
    span: Tuple[int, int]
    kind: SwapKind
    positions: Tuple[int, ...] = ()

    @field_validator("pair")
    @classmethod
    def _canonical_pair(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        a, b = value
        if a == b:
            raise ValueError(f"SWAP pair must be two distinct qubits, got {value}")
        return (a, b) if a < b else (b, a)

    @model_validator(mode="before")
    @classmethod
    def _default_positions(cls, data):
        if isinstance(data, dict) and not data.get("positions") and data.get("span") is not None:
            start, end = data["span"]
            data = dict(data, positions=tuple(range(start, end)))
        return data

    @model_validator(mode="after")
    def _check_span(self) -> "SwapEvent":
        start, end = self.span
        positions = self.positions
        if start < 0 or len(positions) not in _SPAN_LENGTHS[self.kind]:
            raise ValueError(f"span {self.span} is not valid for a {self.kind.value} event")
        if positions[0] != start or positions[-1] != end - 1:
            raise ValueError(f"positions {positions} do not run across span {self.span}")
        if any(later <= earlier for earlier, later in zip(positions, positions[1:])):
            raise ValueError(f"positions {positions} must be strictly increasing")
        return self

    @property
    def start(self) -> int:
        return self.span[0]

    @property
    def end(self) -> int:
        return self.span[1]

    @classmethod
    def over(cls, pair: Tuple[int, int], positions: Sequence[int], kind: SwapKind) -> "SwapEvent":
        """Build an event from the consumed positions."""
        positions = tuple(positions)
        return cls(pair=pair, span=(positions[0], positions[-1] + 1), kind=kind, positions=positions)


class RecognizerConfig(BaseModel):
    """Knobs of the SWAP recognizer."""
    model_config = ConfigDict(frozen=True)

    aliases: FrozenSet[str] = frozenset()
    unitary_tolerance: float = Field(1e-6, gt=0)
    strict_unitary: bool = False

    @field_validator("aliases", mode="before")
    @classmethod
    def _lowercase_aliases(cls, value):
        return frozenset(str(name).strip().lower() for name in (value or ()) if str(name).strip())


class DiagnosticCode(str, Enum):
    STRICT_UNITARY_DEMOTION = "strict_unitary_demotion"
    THREE_QUBIT_INSTRUCTION = "three_qubit_instruction"
    UNRESOLVED_CUSTOM_GATE = "unresolved_custom_gate"


class Diagnostic(BaseModel):
    """A non-fatal finding reported alongside analysis results."""
    model_config = ConfigDict(frozen=True)

    code: DiagnosticCode
    message: str
    position: Optional[int] = None
