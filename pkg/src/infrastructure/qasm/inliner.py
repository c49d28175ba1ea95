"""
Custom gate inlining.
"""
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from pydantic import ValidationError as PydanticValidationError

from src.domain.circuit.gate_library import is_standard_gate
from src.domain.circuit.models import GateDefinition, Instruction
from src.infrastructure.qasm.expressions import ExpressionError, evaluate_expression
from src.shared.exceptions import GateDefinitionError


def inline_definition(
    definition: GateDefinition,
    params: Sequence[float],
    qubits: Sequence[int],
    definitions: Optional[Mapping[str, GateDefinition]] = None,
    _active: Tuple[str, ...] = (),
) -> List[Instruction]:
    """
    Expand a custom gate application into standard instructions.

    Nested custom gates are expanded recursively through `definitions`.
    Standard gate names always keep their built-in meaning.

    Args:
        definition: The gate being applied
        params: Actual parameter values
        qubits: Actual physical qubits
        definitions: Other custom gates visible to the body
        _active: Names currently being expanded, for cycle detection

    Returns:
        The expanded instruction list

    Raises:
        GateDefinitionError: On arity mismatch, recursion or unknown body gates
    """
    name = definition.name
    if name in _active:
        raise GateDefinitionError(f"gate '{name}' is defined recursively")
    if len(params) != len(definition.formal_params):
        raise GateDefinitionError(
            f"gate '{name}' expects {len(definition.formal_params)} parameter(s), got {len(params)}"
        )
    if len(qubits) != len(definition.formal_qubits):
        raise GateDefinitionError(
            f"gate '{name}' expects {len(definition.formal_qubits)} qubit(s), got {len(qubits)}"
        )

    definitions = definitions or {}
    bindings: Dict[str, float] = dict(zip(definition.formal_params, params))
    qubit_map: Dict[str, int] = dict(zip(definition.formal_qubits, qubits))
    active = _active + (name,)

    expanded: List[Instruction] = []
    for template in definition.body:
        try:
            actual_params = tuple(evaluate_expression(p, bindings) for p in template.params)
        except ExpressionError as e:
            raise GateDefinitionError(f"gate '{name}': {e}") from e
        actual_qubits = tuple(qubit_map[s] for s in template.qubits)

        if is_standard_gate(template.name):
            try:
                expanded.append(Instruction(name=template.name, qubits=actual_qubits, params=actual_params))
            except PydanticValidationError as e:
                raise GateDefinitionError(f"gate '{name}': {e.errors()[0]['msg']}") from e
            continue

        nested = definition if template.name == name else definitions.get(template.name)
        if nested is None:
            raise GateDefinitionError(f"gate '{name}' uses unknown gate '{template.name}'")
        expanded.extend(inline_definition(nested, actual_params, actual_qubits, definitions, active))
    return expanded
