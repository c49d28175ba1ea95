"""
Domain models for transpiled circuits.
"""
import re
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.domain.circuit.gate_library import max_unitarity_deviation

MAX_GATE_ARITY = 3
UNITARITY_TOLERANCE = 1e-9

_SYMBOL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_CONSTANTS = frozenset({"pi"})


class Instruction(BaseModel):
    """One gate application on physical qubits."""
    model_config = ConfigDict(frozen=True)

    name: str
    qubits: Tuple[int, ...]
    params: Tuple[float, ...] = ()
    matrix: Optional[Tuple[Tuple[complex, ...], ...]] = None

    @field_validator("name")
    @classmethod
    def _lowercase(cls, value: str) -> str:
        return value.lower()

    @model_validator(mode="after")
    def _check_operands(self) -> "Instruction":
        if not 1 <= len(self.qubits) <= MAX_GATE_ARITY:
            raise ValueError(f"{self.name}: expected 1 to {MAX_GATE_ARITY} qubits, got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.name}: repeated qubit operand in {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"{self.name}: negative qubit index in {self.qubits}")
        if self.matrix is not None:
            if len(self.qubits) != 2:
                raise ValueError(f"{self.name}: explicit matrices are only supported on 2 qubits")
            if len(self.matrix) != 4 or any(len(row) != 4 for row in self.matrix):
                raise ValueError(f"{self.name}: explicit matrix must be 4x4")
            if max_unitarity_deviation(np.array(self.matrix)) > UNITARITY_TOLERANCE:
                raise ValueError(f"{self.name}: explicit matrix is not unitary")
        return self

    @classmethod
    def with_matrix(cls, name: str, qubits: Sequence[int], matrix: np.ndarray) -> "Instruction":
        """Build an explicit-unitary instruction from a numpy matrix."""
        rows = tuple(tuple(complex(v) for v in row) for row in np.asarray(matrix))
        return cls(name=name, qubits=tuple(qubits), matrix=rows)

    def unitary(self) -> Optional[np.ndarray]:
        """Return the explicit matrix as a numpy array, if any."""
        if self.matrix is None:
            return None
        return np.array(self.matrix, dtype=complex)

    def touches(self, qubits: FrozenSet[int]) -> bool:
        return any(q in qubits for q in self.qubits)

    def __str__(self) -> str:
        params = f"({', '.join(f'{p:.6g}' for p in self.params)})" if self.params else ""
        return f"{self.name}{params}{self.qubits}"


class GateTemplate(BaseModel):
    """A gate application inside a custom gate body, over formal symbols."""
    model_config = ConfigDict(frozen=True)

    name: str
    qubits: Tuple[str, ...]
    params: Tuple[str, ...] = ()

    @field_validator("name")
    @classmethod
    def _lowercase(cls, value: str) -> str:
        return value.lower()


def expression_symbols(text: str) -> FrozenSet[str]:
    """Identifiers referenced by a parameter expression, constants excluded."""
    return frozenset(s for s in _SYMBOL.findall(text) if s not in _CONSTANTS)


class GateDefinition(BaseModel):
    """A user-declared `gate` with its body kept symbolic."""
    model_config = ConfigDict(frozen=True)

    name: str
    formal_params: Tuple[str, ...] = ()
    formal_qubits: Tuple[str, ...]
    body: Tuple[GateTemplate, ...] = ()

    @field_validator("name")
    @classmethod
    def _lowercase(cls, value: str) -> str:
        return value.lower()

    @model_validator(mode="after")
    def _check_symbols(self) -> "GateDefinition":
        qubit_symbols = set(self.formal_qubits)
        param_symbols = set(self.formal_params)
        for template in self.body:
            unknown = set(template.qubits) - qubit_symbols
            if unknown:
                raise ValueError(f"gate {self.name}: undeclared qubit symbol(s) {sorted(unknown)}")
            for expr in template.params:
                unknown = expression_symbols(expr) - param_symbols
                if unknown:
                    raise ValueError(f"gate {self.name}: undeclared parameter symbol(s) {sorted(unknown)}")
        return self


class ParsedCircuit(BaseModel):
    """
    Ordered instruction stream over physical qubits.

    Custom gate applications stay under their declared name; their
    definitions travel with the circuit for lazy inlining.
    """
    model_config = ConfigDict(frozen=True)

    instructions: Tuple[Instruction, ...] = ()
    num_qubits: int = Field(0, ge=0)
    layout: Optional[Dict[int, int]] = None
    source_name: str = "<memory>"
    definitions: Dict[str, GateDefinition] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_indices(self) -> "ParsedCircuit":
        for position, instruction in enumerate(self.instructions):
            for q in instruction.qubits:
                if q >= self.num_qubits:
                    raise ValueError(
                        f"instruction {position} ({instruction.name}) uses qubit {q} "
                        f"outside a {self.num_qubits}-qubit circuit"
                    )
        if self.layout is not None and len(set(self.layout.values())) != len(self.layout):
            raise ValueError("layout is not injective")
        return self

    def with_layout(self, layout: Optional[Dict[int, int]]) -> "ParsedCircuit":
        """Return a copy with the given logical-to-physical layout attached."""
        return ParsedCircuit(
            instructions=self.instructions,
            num_qubits=self.num_qubits,
            layout=layout,
            source_name=self.source_name,
            definitions=self.definitions,
        )

    def active_qubits(self) -> List[int]:
        """Physical qubits touched by at least one instruction, in first-use order."""
        seen: Dict[int, None] = {}
        for instruction in self.instructions:
            for q in instruction.qubits:
                seen.setdefault(q, None)
        return list(seen)
