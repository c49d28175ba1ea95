"""
Builders shared by the test modules.
"""
import math
from pathlib import Path
from typing import Optional, Sequence

from src.domain.circuit.models import Instruction, ParsedCircuit
from src.domain.coupling.models import CouplingGraph

FIXTURES = Path(__file__).parent / "fixtures"
HALF_PI = math.pi / 2


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def ins(name: str, *qubits: int, params: Sequence[float] = ()) -> Instruction:
    return Instruction(name=name, qubits=tuple(qubits), params=tuple(params))


def circuit(*instructions: Instruction, num_qubits: Optional[int] = None, name: str = "<test>") -> ParsedCircuit:
    if num_qubits is None:
        num_qubits = max((q for i in instructions for q in i.qubits), default=-1) + 1
    return ParsedCircuit(instructions=tuple(instructions), num_qubits=num_qubits, source_name=name)


def graph(*edges, num_qubits: Optional[int] = None) -> CouplingGraph:
    return CouplingGraph(edges=list(edges), num_qubits=num_qubits)


def path_edges(order: Sequence[int]):
    return [(order[k], order[k + 1]) for k in range(len(order) - 1)]
