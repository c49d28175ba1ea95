"""
OpenQASM 2.0 emission for parsed and synthesized circuits.
"""
from typing import List

from src.domain.circuit.gate_library import is_standard_gate
from src.domain.circuit.models import GateDefinition, Instruction, ParsedCircuit
from src.infrastructure.qasm.parser import STANDARD_INCLUDE
from src.shared.exceptions import EmitError

REGISTER_NAME = "q"


def _format_params(params) -> str:
    if not params:
        return ""
    return "(" + ",".join(str(p) if isinstance(p, str) else repr(float(p)) for p in params) + ")"


def _emit_definition(definition: GateDefinition) -> str:
    formal_params = f"({','.join(definition.formal_params)})" if definition.formal_params else ""
    lines = [f"gate {definition.name}{formal_params} {','.join(definition.formal_qubits)}", "{"]
    for template in definition.body:
        lines.append(f"  {template.name}{_format_params(template.params)} {','.join(template.qubits)};")
    lines.append("}")
    return "\n".join(lines)


def _emit_instruction(instruction: Instruction, circuit: ParsedCircuit) -> str:
    if instruction.matrix is not None:
        raise EmitError(f"instruction {instruction} carries an explicit matrix and has no OpenQASM form")
    if not is_standard_gate(instruction.name) and instruction.name not in circuit.definitions:
        raise EmitError(f"gate '{instruction.name}' has no definition to emit")
    operands = ",".join(f"{REGISTER_NAME}[{q}]" for q in instruction.qubits)
    return f"{instruction.name}{_format_params(instruction.params)} {operands};"


def emit_qasm(circuit: ParsedCircuit) -> str:
    """
    Render a circuit as OpenQASM 2.0 text over a single register `q`.

    Parameters are written with full float precision, so parsing the output
    reproduces the instruction sequence exactly.

    Raises:
        EmitError: For matrix instructions or undefined custom gates
    """
    lines: List[str] = ["OPENQASM 2.0;", f'include "{STANDARD_INCLUDE}";']
    for definition in circuit.definitions.values():
        lines.append(_emit_definition(definition))
    if circuit.num_qubits > 0:
        lines.append(f"qreg {REGISTER_NAME}[{circuit.num_qubits}];")
    for instruction in circuit.instructions:
        lines.append(_emit_instruction(instruction, circuit))
    return "\n".join(lines) + "\n"
