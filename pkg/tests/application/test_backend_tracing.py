"""
Tests for the backend registry and tracing.
"""
import time

import pytest

from src.application.backend_tracing.registry import BackendRegistry
from src.application.backend_tracing.tracer import trace, trace_pool
from src.application.coupling_extraction.extractor import derive_coupling_map
from src.application.synth_oracle.synthesizer import synthesize
from src.domain.backend.models import BackendRecord, VerdictKind
from src.domain.coupling.models import CouplingGraph
from src.domain.swap.models import RecognizerConfig, SwapKind
from src.domain.synthesis.models import LayoutMode, SynthConfig, TopologySpec
from src.infrastructure.qasm.parser import parse_qasm
from src.shared.exceptions import LabelError, RegistryError
from tests.helpers import circuit, fixture_path, graph, ins, path_edges, read_fixture

CONFIG = RecognizerConfig()

# Three 20-qubit chains over different qubit orders; only (1, 18) is shared
ORDERS = {
    "ladder": list(range(20)),
    "stride2": list(range(0, 20, 2)) + list(range(1, 20, 2)),
    "stride3": [0, 3, 6, 9, 12, 15, 18, 1, 4, 7, 10, 13, 16, 19, 2, 5, 8, 11, 14, 17],
}


def _record(name, edges, num_qubits):
    return BackendRecord(name=name, num_qubits=num_qubits, topology=CouplingGraph(edges=edges, num_qubits=num_qubits))


def _chain_registry() -> BackendRegistry:
    return BackendRegistry([_record(name, path_edges(order), 20) for name, order in ORDERS.items()])


def _chain_pool(per_backend: int):
    registry = _chain_registry()
    circuits, labels = [], {}
    for record in registry:
        for seed in range(per_backend):
            name = f"{record.name}-{seed}.qasm"
            config = SynthConfig(
                num_logical=8,
                num_2q_ops=16,
                layout_mode=LayoutMode.RANDOM,
                seed=seed,
                disguise=(SwapKind.DIRECT, SwapKind.THREE_CNOT, SwapKind.PAULI_ROTATION_TRIPLE),
            )
            circuits.append(synthesize(TopologySpec.explicit(record.topology), config, source_name=name).circuit)
            labels[name] = record.name
    return registry, circuits, labels


def _t_registry() -> BackendRegistry:
    return BackendRegistry.from_json(read_fixture("registry_t_shared.json"))


# Registry

def test_registry_is_sorted_by_name():
    registry = _t_registry()
    assert registry.names() == ["athens", "burlington", "vigo"]
    assert len(registry) == 3
    assert "vigo" in registry
    assert registry.get("missing") is None


def test_registry_rejects_empty_and_duplicates():
    with pytest.raises(RegistryError, match="no backends"):
        BackendRegistry([])
    record = _record("a", [(0, 1)], 2)
    with pytest.raises(RegistryError, match="duplicate"):
        BackendRegistry([record, record])


def test_registry_json_is_read_back():
    registry = _t_registry()
    assert BackendRegistry.from_json(registry.to_json()).records() == registry.records()


@pytest.mark.asyncio
async def test_registry_load():
    registry = await BackendRegistry.load(fixture_path("registry_sample.json"))
    assert registry.names() == ["alpha", "beta"]


@pytest.mark.asyncio
async def test_shipped_registry():
    registry = await BackendRegistry.load("data/registries/ibm_style.json")
    assert registry.names() == ["cambridge", "paris", "singapore"]
    assert len(registry.get("singapore").topology) == 23
    assert sum(len(r.topology) for r in registry) == 81


# Single graph tracing

def test_sample_graph_is_unique(sample):
    registry = BackendRegistry.from_json(read_fixture("registry_sample.json"))
    outcome = trace(derive_coupling_map(sample, CONFIG), registry)
    assert outcome.verdict == VerdictKind.UNIQUE
    assert outcome.candidates == ("alpha",)
    assert outcome.backend == "alpha"
    assert outcome.matched_edges == 3


def test_shared_t_shape_is_ambiguous():
    result = synthesize(TopologySpec.t_shape(5), SynthConfig(num_logical=5, enumerate_edges=True, num_2q_ops=6))
    outcome = trace(derive_coupling_map(result.circuit, CONFIG), _t_registry())
    assert outcome.verdict == VerdictKind.AMBIGUOUS
    assert outcome.candidates == ("burlington", "vigo")
    assert outcome.backend is None
    assert outcome.matched_edges == 4


def test_foreign_edge_is_unmatched():
    outcome = trace(graph((0, 4), num_qubits=5), _t_registry())
    assert outcome.verdict == VerdictKind.UNMATCHED
    assert outcome.candidates == ()
    assert outcome.matched_edges == 0


def test_graph_beyond_backend_size_is_unmatched():
    assert trace(graph((6, 7)), _t_registry()).verdict == VerdictKind.UNMATCHED


def test_empty_graph_is_contained_everywhere():
    assert trace(CouplingGraph(), _t_registry()).candidates == ("athens", "burlington", "vigo")
    single = BackendRegistry([_record("solo", [(0, 1)], 2)])
    assert trace(CouplingGraph(), single).verdict == VerdictKind.UNIQUE


def test_trace_rejects_empty_registry():
    with pytest.raises(RegistryError):
        trace(graph((0, 1)), [])


# Pool tracing

@pytest.mark.parametrize("per_backend", [20, 30, 40, 60])
def test_pool_accuracy_on_distinct_chains(per_backend):
    registry, circuits, labels = _chain_pool(per_backend)
    assert len(circuits) == 3 * per_backend
    report = trace_pool(circuits, registry, CONFIG, labels)
    assert report.accuracy_percent >= 95.0
    for item in report.outcomes:
        if item.outcome.verdict == VerdictKind.UNIQUE:
            assert item.outcome.backend == labels[item.source_name]
        assert item.outcome.verdict != VerdictKind.UNMATCHED
    assert set(report.per_backend_accuracy) == set(ORDERS)


def test_pool_keeps_input_order():
    registry, circuits, _ = _chain_pool(per_backend=3)
    report = trace_pool(list(reversed(circuits)), registry, CONFIG, max_workers=3)
    assert [item.source_name for item in report.outcomes] == [c.source_name for c in reversed(circuits)]
    assert report.accuracy_percent is None
    assert report.per_backend_accuracy is None


def test_all_ambiguous_pool_scores_zero():
    registry = _t_registry()
    circuits = [circuit(ins("cx", 0, 1), num_qubits=5, name=f"c{k}.qasm") for k in range(4)]
    labels = {f"c{k}.qasm": "vigo" for k in range(4)}
    report = trace_pool(circuits, registry, CONFIG, labels)
    assert report.verdict_counts() == {"unique": 0, "ambiguous": 4, "unmatched": 0}
    assert report.accuracy_percent == 0.0
    assert report.per_backend_accuracy == {"vigo": 0.0}


def test_unmatched_counts_as_incorrect():
    registry = _t_registry()
    circuits = [
        circuit(ins("cx", 0, 4), num_qubits=5, name="foreign.qasm"),
        circuit(ins("cx", 2, 3), num_qubits=5, name="linear.qasm"),
    ]
    report = trace_pool(circuits, registry, CONFIG, {"foreign.qasm": "athens", "linear.qasm": "athens"})
    assert report.accuracy_percent == 50.0


def test_labels_must_name_known_circuits_and_backends():
    registry = _t_registry()
    circuits = [circuit(ins("cx", 0, 1), num_qubits=5, name="c0.qasm")]
    with pytest.raises(LabelError, match="unknown circuit"):
        trace_pool(circuits, registry, CONFIG, {"other.qasm": "vigo"})
    with pytest.raises(LabelError, match="unknown backend"):
        trace_pool(circuits, registry, CONFIG, {"c0.qasm": "melbourne"})


def test_pool_tracing_is_fast():
    registry, circuits, labels = _chain_pool(per_backend=60)
    assert len(circuits) == 180
    start = time.perf_counter()
    trace_pool(circuits, registry, CONFIG, labels)
    assert time.perf_counter() - start < 1.0


def test_parsed_custom_swap_is_traced():
    registry = BackendRegistry([_record("six", [(0, 1), (1, 2), (3, 5)], 6)])
    report = trace_pool([parse_qasm(read_fixture("myswap.qasm"), "myswap.qasm")], registry, CONFIG)
    assert report.outcomes[0].outcome.verdict == VerdictKind.UNIQUE
    assert report.outcomes[0].derived.edges == frozenset({(0, 1), (1, 2)})
