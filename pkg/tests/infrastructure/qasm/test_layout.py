"""
Tests for layout sidecars.
"""
from pathlib import Path

import pytest

from src.infrastructure.qasm.layout import layout_to_json, parse_layout_sidecar, sidecar_path
from src.shared.exceptions import LayoutError


def test_parse_layout():
    assert parse_layout_sidecar('{"0": 4, "1": 2}') == {0: 4, 1: 2}


def test_parse_layout_orders_by_logical_index():
    layout = parse_layout_sidecar('{"2": 0, "0": 7, "1": 3}')
    assert list(layout) == [0, 1, 2]


def test_duplicate_physical_qubit():
    with pytest.raises(LayoutError, match="duplicate physical"):
        parse_layout_sidecar('{"0": 4, "1": 4}')


@pytest.mark.parametrize("text", ['{"1": 4, "01": 2}', '{"1": 4, " 1": 2}', '{"1": 4, "1": 2}'])
def test_duplicate_logical_qubit(text):
    with pytest.raises(LayoutError, match="twice|duplicate key"):
        parse_layout_sidecar(text)


@pytest.mark.parametrize(
    "text",
    ['{"0": 4', "[4, 2]", '{"a": 1}', '{"0": -1}', '{"-1": 0}', '{"0": "4"}', '{"0": true}'],
)
def test_malformed_layouts(text):
    with pytest.raises(LayoutError):
        parse_layout_sidecar(text)


def test_sidecar_path():
    assert sidecar_path("runs/circuit_01.qasm") == Path("runs/circuit_01.layout.json")


def test_layout_json_is_read_back():
    layout = {3: 7, 0: 4, 1: 3}
    assert parse_layout_sidecar(layout_to_json(layout)) == {0: 4, 1: 3, 3: 7}
