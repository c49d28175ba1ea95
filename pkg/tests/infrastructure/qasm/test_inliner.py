"""
Tests for custom gate inlining.
"""
import math

import pytest

from src.domain.circuit.models import GateDefinition, GateTemplate, Instruction
from src.infrastructure.qasm.inliner import inline_definition
from src.shared.exceptions import GateDefinitionError

MYSWAP = GateDefinition(
    name="myswap",
    formal_qubits=("a", "b"),
    body=(
        GateTemplate(name="cx", qubits=("a", "b")),
        GateTemplate(name="cx", qubits=("b", "a")),
        GateTemplate(name="cx", qubits=("a", "b")),
    ),
)


def test_inline_three_cnot_body():
    expanded = inline_definition(MYSWAP, (), (3, 5))
    assert expanded == [
        Instruction(name="cx", qubits=(3, 5)),
        Instruction(name="cx", qubits=(5, 3)),
        Instruction(name="cx", qubits=(3, 5)),
    ]


def test_inline_wrapper_of_standard_gate():
    wrapper = GateDefinition(name="wrap", formal_qubits=("a", "b"), body=(GateTemplate(name="swap", qubits=("a", "b")),))
    assert inline_definition(wrapper, (), (0, 1)) == [Instruction(name="swap", qubits=(0, 1))]


def test_inline_substitutes_parameters():
    rot = GateDefinition(
        name="rot",
        formal_params=("theta",),
        formal_qubits=("a",),
        body=(GateTemplate(name="rz", qubits=("a",), params=("theta/2",)),),
    )
    (instruction,) = inline_definition(rot, (math.pi,), (4,))
    assert instruction.name == "rz"
    assert instruction.qubits == (4,)
    assert instruction.params == pytest.approx((math.pi / 2,))


def test_inline_nested_definitions():
    outer = GateDefinition(
        name="outer",
        formal_qubits=("x", "y"),
        body=(GateTemplate(name="h", qubits=("x",)), GateTemplate(name="myswap", qubits=("y", "x"))),
    )
    expanded = inline_definition(outer, (), (0, 2), {"myswap": MYSWAP})
    assert [(i.name, i.qubits) for i in expanded] == [
        ("h", (0,)), ("cx", (2, 0)), ("cx", (0, 2)), ("cx", (2, 0)),
    ]


def test_self_reference_is_rejected():
    loop = GateDefinition(name="loop", formal_qubits=("a",), body=(GateTemplate(name="loop", qubits=("a",)),))
    with pytest.raises(GateDefinitionError, match="recursively"):
        inline_definition(loop, (), (0,), {"loop": loop})


def test_mutual_recursion_is_rejected():
    ping = GateDefinition(name="ping", formal_qubits=("a",), body=(GateTemplate(name="pong", qubits=("a",)),))
    pong = GateDefinition(name="pong", formal_qubits=("a",), body=(GateTemplate(name="ping", qubits=("a",)),))
    with pytest.raises(GateDefinitionError, match="recursively"):
        inline_definition(ping, (), (0,), {"ping": ping, "pong": pong})


def test_arity_mismatch():
    with pytest.raises(GateDefinitionError, match="expects 2 qubit"):
        inline_definition(MYSWAP, (), (0,))


def test_unknown_body_gate():
    odd = GateDefinition(name="odd", formal_qubits=("a",), body=(GateTemplate(name="mystery", qubits=("a",)),))
    with pytest.raises(GateDefinitionError, match="unknown gate 'mystery'"):
        inline_definition(odd, (), (0,))
