"""
JSON formats for coupling graphs, backend registries, labels and reports.

Input documents are validated with jsonschema before they are turned into
domain models. Output is canonical: sorted keys and sorted edge lists.
"""
import json
from typing import Any, Dict, FrozenSet, List, Optional, Type

import jsonschema
from pydantic import BaseModel
from pydantic import ValidationError as PydanticValidationError

from src.domain.backend.models import BackendRecord
from src.domain.coupling.models import CouplingGraph
from src.shared.exceptions import GraphFormatError, InputError, LabelError, RegistryError

EDGE_SCHEMA = {
    "type": "array",
    "items": {"type": "integer", "minimum": 0},
    "minItems": 2,
    "maxItems": 2,
}

GRAPH_SCHEMA = {
    "type": "object",
    "properties": {
        "num_qubits": {"type": ["integer", "null"], "minimum": 0},
        "edges": {"type": "array", "items": EDGE_SCHEMA},
    },
    "required": ["edges"],
}

REGISTRY_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "properties": {
            "name": {"type": "string", "minLength": 1},
            "num_qubits": {"type": "integer", "minimum": 1},
            "edges": {"type": "array", "items": EDGE_SCHEMA},
        },
        "required": ["name", "num_qubits", "edges"],
    },
}

LABELS_SCHEMA = {
    "type": "object",
    "additionalProperties": {"type": "string"},
}


def _load(text: str, schema: Dict[str, Any], error: Type[InputError], what: str) -> Any:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise error(f"malformed {what} JSON: {e.msg} (line {e.lineno})") from e
    try:
        jsonschema.validate(instance=data, schema=schema)
    except jsonschema.ValidationError as e:
        location = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise error(f"invalid {what} at {location}: {e.message}") from e
    return data


def dumps(data: Any, indent: Optional[int] = None) -> str:
    """Stable JSON text: sorted keys, fixed separators."""
    return json.dumps(data, sort_keys=True, indent=indent)


def graph_to_json(graph: CouplingGraph) -> str:
    return dumps(graph.to_dict())


def graph_from_json(text: str) -> CouplingGraph:
    """
    Parse a coupling graph document {"num_qubits": n, "edges": [[a,b],...]}.

    Raises:
        GraphFormatError: On malformed JSON, schema violations or self-loops
    """
    data = _load(text, GRAPH_SCHEMA, GraphFormatError, "coupling graph")
    try:
        graph = CouplingGraph.from_dict(data)
    except PydanticValidationError as e:
        raise GraphFormatError(f"invalid coupling graph: {e.errors()[0]['msg']}") from e
    if graph.num_qubits is not None and graph.max_qubit() >= graph.num_qubits:
        raise GraphFormatError(f"edge endpoint {graph.max_qubit()} outside {graph.num_qubits} qubits")
    return graph


def registry_from_json(text: str) -> List[BackendRecord]:
    """
    Parse a registry document: a JSON array of {"name", "num_qubits", "edges"}.

    Raises:
        RegistryError: On malformed JSON, schema violations, out-of-range
            endpoints or duplicate names
    """
    data = _load(text, REGISTRY_SCHEMA, RegistryError, "registry")
    records: List[BackendRecord] = []
    seen = set()
    for entry in data:
        if entry["name"] in seen:
            raise RegistryError(f"duplicate backend name '{entry['name']}'")
        seen.add(entry["name"])
        try:
            records.append(BackendRecord(
                name=entry["name"],
                num_qubits=entry["num_qubits"],
                topology=CouplingGraph(edges=entry["edges"], num_qubits=entry["num_qubits"]),
            ))
        except PydanticValidationError as e:
            raise RegistryError(f"backend '{entry['name']}': {e.errors()[0]['msg']}") from e
    return records


def registry_to_json(records: List[BackendRecord]) -> str:
    return dumps(
        [
            {"name": r.name, "num_qubits": r.num_qubits, "edges": r.topology.sorted_edges(as_lists=True)}
            for r in records
        ],
        indent=2,
    )


def labels_from_json(text: str) -> Dict[str, str]:
    """Parse a ground-truth label file mapping source names to backend names."""
    return dict(_load(text, LABELS_SCHEMA, LabelError, "labels"))


def aliases_from_text(text: str) -> FrozenSet[str]:
    """One gate name per line; blank lines and '#' comments are skipped."""
    names = set()
    for line in text.splitlines():
        name = line.split("#", 1)[0].strip()
        if name:
            names.add(name.lower())
    return frozenset(names)


def report_to_json(report: BaseModel) -> str:
    """Serialize a report model canonically."""
    return dumps(report.model_dump(mode="json"), indent=2)
