"""
Layout sidecar files.

A sidecar sits next to a circuit as `<stem>.layout.json` and maps logical
qubit indices (as JSON object keys) to physical indices.
"""
import json
from pathlib import Path
from typing import Dict, Union

from src.shared.exceptions import LayoutError

LAYOUT_SUFFIX = ".layout.json"


def sidecar_path(circuit_path: Union[str, Path]) -> Path:
    """Where the layout sidecar for a circuit file would live."""
    path = Path(circuit_path)
    return path.with_name(path.stem + LAYOUT_SUFFIX)


def _unique_keys(pairs):
    keys = [key for key, _ in pairs]
    if len(set(keys)) != len(keys):
        raise LayoutError(f"duplicate key in layout JSON: {sorted(k for k in set(keys) if keys.count(k) > 1)}")
    return dict(pairs)


def parse_layout_sidecar(text: str) -> Dict[int, int]:
    """
    Parse a layout sidecar document.

    Args:
        text: JSON object text, e.g. '{"0": 4, "1": 2}'

    Returns:
        Logical-to-physical mapping ordered by logical index

    Raises:
        LayoutError: On malformed JSON, negative indices, or a logical or physical
            qubit that appears twice
    """
    try:
        data = json.loads(text, object_pairs_hook=_unique_keys)
    except json.JSONDecodeError as e:
        raise LayoutError(f"malformed layout JSON: {e.msg}") from e
    if not isinstance(data, dict):
        raise LayoutError("layout must be a JSON object of logical -> physical indices")

    layout: Dict[int, int] = {}
    for key, value in data.items():
        try:
            logical = int(key)
        except ValueError as e:
            raise LayoutError(f"layout key '{key}' is not an integer") from e
        if logical in layout:
            raise LayoutError(f"logical qubit {logical} is mapped twice (key '{key}')")
        if isinstance(value, bool) or not isinstance(value, int):
            raise LayoutError(f"layout value for {logical} is not an integer")
        if logical < 0 or value < 0:
            raise LayoutError(f"negative index in layout entry {logical} -> {value}")
        layout[logical] = value

    physical = list(layout.values())
    if len(set(physical)) != len(physical):
        duplicates = sorted({p for p in physical if physical.count(p) > 1})
        raise LayoutError(f"duplicate physical qubit(s) in layout: {duplicates}")
    return dict(sorted(layout.items()))


def layout_to_json(layout: Dict[int, int]) -> str:
    return json.dumps({str(k): v for k, v in sorted(layout.items())}, indent=2)
