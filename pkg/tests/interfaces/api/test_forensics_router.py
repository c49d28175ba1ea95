"""
Tests for the forensics HTTP endpoints.
"""
import pytest
from fastapi.testclient import TestClient

from src.application.backend_tracing.registry import BackendRegistry
from src.interfaces.api.router import get_registry
from src.main import app
from tests.helpers import read_fixture

client = TestClient(app)

SAMPLE = {"name": "sample.qasm", "qasm": read_fixture("sample.qasm"), "layout": {"0": 4, "1": 3, "2": 5, "3": 7}}


@pytest.fixture(autouse=True)
def sample_registry():
    registry = BackendRegistry.from_json(read_fixture("registry_sample.json"))
    app.dependency_overrides[get_registry] = lambda: registry
    yield registry
    app.dependency_overrides.clear()


def test_extract_endpoint():
    response = client.post("/forensics/extract", json={"circuits": [SAMPLE]})
    assert response.status_code == 200
    (result,) = response.json()["results"]
    assert result["source_name"] == "sample.qasm"
    assert result["graph"] == {"edges": [[3, 4], [3, 5], [3, 7]], "num_qubits": 8}
    assert [(e["pair"], e["kind"]) for e in result["events"]] == [([3, 5], "direct")]
    assert result["diagnostics"] == []


def test_extract_with_aliases():
    payload = {"name": "routed.qasm", "qasm": read_fixture("routed.qasm")}
    response = client.post("/forensics/extract", json={"circuits": [payload], "aliases": ["router_swap"]})
    assert response.json()["results"][0]["graph"]["edges"] == [[0, 1], [2, 3]]


def test_extract_rejects_bad_qasm():
    payload = {"name": "bad.qasm", "qasm": "OPENQASM 2.0;\nqreg q[2];\ncx q[0] q[1];\n"}
    response = client.post("/forensics/extract", json={"circuits": [payload]})
    assert response.status_code == 400
    assert response.json()["type"] == "QasmParseError"


def test_extract_rejects_non_injective_layout():
    payload = dict(SAMPLE, layout={"0": 1, "1": 1})
    response = client.post("/forensics/extract", json={"circuits": [payload]})
    assert response.status_code == 400
    assert response.json()["type"] == "LayoutError"


def test_extract_needs_circuits():
    assert client.post("/forensics/extract", json={"circuits": []}).status_code == 422


def test_hamming_endpoint():
    response = client.post("/forensics/hamming", json={
        "first": {"edges": [[0, 1], [1, 2]]},
        "second": {"edges": [[1, 2], [2, 3]]},
    })
    assert response.status_code == 200
    assert response.json() == {"distance": 2}


def test_trace_endpoint():
    response = client.post("/forensics/trace", json={"circuits": [SAMPLE], "labels": {"sample.qasm": "alpha"}})
    assert response.status_code == 200
    report = response.json()
    assert report["outcomes"][0]["outcome"] == {"verdict": "unique", "candidates": ["alpha"], "matched_edges": 3}
    assert report["accuracy_percent"] == 100.0


def test_trace_unknown_label():
    response = client.post("/forensics/trace", json={"circuits": [SAMPLE], "labels": {"sample.qasm": "gamma"}})
    assert response.status_code == 400
    assert "gamma" in response.json()["error"]


def test_backends_endpoint():
    response = client.get("/forensics/backends")
    assert response.status_code == 200
    assert response.json() == {
        "total": 2,
        "backends": [
            {"name": "alpha", "num_qubits": 8, "num_edges": 7},
            {"name": "beta", "num_qubits": 8, "num_edges": 7},
        ],
    }
