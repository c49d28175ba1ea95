"""
Tests for OpenQASM emission.
"""
import numpy as np
import pytest

from src.application.synth_oracle.synthesizer import synthesize
from src.domain.circuit.gate_library import SWAP_MATRIX
from src.domain.circuit.models import Instruction, ParsedCircuit
from src.domain.swap.models import SwapKind
from src.domain.synthesis.models import LayoutMode, SynthConfig, TopologySpec
from src.infrastructure.qasm.emitter import emit_qasm
from src.infrastructure.qasm.parser import parse_qasm
from src.shared.exceptions import EmitError
from tests.helpers import circuit, ins, read_fixture


def test_emit_single_cx():
    text = emit_qasm(circuit(ins("cx", 0, 1)))
    assert text == 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\ncx q[0],q[1];\n'


def test_emit_empty_circuit_has_no_register():
    assert emit_qasm(ParsedCircuit()) == 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'


def test_sample_circuit_survives_emission(sample):
    again = parse_qasm(emit_qasm(sample))
    assert again.instructions == sample.instructions
    assert again.num_qubits == sample.num_qubits


def test_custom_definitions_are_emitted():
    original = parse_qasm(read_fixture("myswap.qasm"))
    again = parse_qasm(emit_qasm(original))
    assert again.instructions == original.instructions
    assert again.definitions == original.definitions


def test_parameters_keep_full_precision():
    config = SynthConfig(
        num_logical=5,
        num_2q_ops=12,
        layout_mode=LayoutMode.RANDOM,
        seed=3,
        disguise=(SwapKind.PAULI_ROTATION_TRIPLE,),
    )
    result = synthesize(TopologySpec.linear(5), config)
    again = parse_qasm(emit_qasm(result.circuit))
    assert again.instructions == result.circuit.instructions


def test_matrix_instruction_cannot_be_emitted():
    swap = Instruction.with_matrix("u_swap", (0, 1), np.exp(0.3j) * SWAP_MATRIX)
    with pytest.raises(EmitError, match="explicit matrix"):
        emit_qasm(circuit(swap))


def test_undefined_custom_gate_cannot_be_emitted():
    with pytest.raises(EmitError, match="no definition"):
        emit_qasm(circuit(ins("mystery", 0, 1)))
