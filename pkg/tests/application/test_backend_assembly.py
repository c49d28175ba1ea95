"""
Tests for whole-backend assembly.
"""
import random
import time

import pytest

from src.application.backend_assembly.assembler import (
    assemble,
    average_coverage_curve,
    coverage_curve_to_csv,
    project_user_subgraph,
    shuffle_pool,
)
from src.application.backend_tracing.registry import BackendRegistry
from src.application.coupling_extraction.extractor import derive_coupling_map
from src.application.synth_oracle.synthesizer import synthesize
from src.domain.coupling.models import CouplingGraph
from src.domain.swap.models import RecognizerConfig, SwapKind
from src.domain.synthesis.models import LayoutMode, SynthConfig, TopologySpec
from src.shared.exceptions import LayoutError, ValidationError
from tests.helpers import graph

CONFIG = RecognizerConfig()
TRUTH = graph((0, 1), (1, 2), (2, 3), (3, 4))


# Three connected regions per shipped backend whose induced edges cover the whole map
REGIONS = {
    "cambridge": [
        list(range(16)),
        [7, 8, 9, 10, 11, 16, 17, 19, 20, 21, 22, 23],
        [11, 12, 13, 14, 15, 17, 18, 23, 24, 25, 26, 27],
    ],
    "paris": [
        list(range(15)),
        [12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25],
        [18, 19, 20, 21, 22, 23, 24, 25, 26],
    ],
    "singapore": [list(range(15)), list(range(5, 20)), list(range(10, 20))],
}


def _region_fixture(truth: CouplingGraph, region, seed: int) -> CouplingGraph:
    config = SynthConfig(
        num_logical=len(region),
        num_2q_ops=10,
        layout_mode=LayoutMode.RANDOM,
        seed=seed,
        disguise=(SwapKind.DIRECT, SwapKind.THREE_CNOT),
        enumerate_edges=True,
    )
    result = synthesize(TopologySpec.explicit(truth.induced(region)), config)
    return derive_coupling_map(result.circuit, CONFIG)


def test_assemble_unions_the_pool():
    report = assemble([graph((0, 1)), graph((1, 2), (0, 1)), graph()], TRUTH)
    assert report.assembled.edges == frozenset({(0, 1), (1, 2)})
    assert report.coverage_curve == [(1, 25.0), (2, 50.0), (3, 50.0)]
    assert report.final_coverage == 50.0
    assert [c.source_name for c in report.per_circuit] == ["circuit-0", "circuit-1", "circuit-2"]


def test_assemble_without_truth_has_no_curve():
    report = assemble([graph((0, 1), num_qubits=3), graph((2, 3), num_qubits=5)])
    assert report.coverage_curve == []
    assert report.final_coverage is None
    assert report.assembled.num_qubits == 5


def test_assemble_empty_pool():
    report = assemble([], TRUTH)
    assert report.assembled.edges == frozenset()
    assert report.coverage_curve == []


def test_assemble_checks_names():
    with pytest.raises(ValidationError):
        assemble([graph((0, 1))], source_names=["a", "b"])


def test_coverage_curve_is_monotone():
    pool = [graph(e) for e in [(3, 4), (0, 1), (0, 1), (2, 3), (1, 2)]]
    curve = [pct for _, pct in assemble(pool, TRUTH).coverage_curve]
    assert curve == sorted(curve)
    assert curve[-1] == 100.0


@pytest.mark.asyncio
@pytest.mark.parametrize("name", sorted(REGIONS))
async def test_backend_is_recovered_from_three_circuits(name):
    registry = await BackendRegistry.load("data/registries/ibm_style.json")
    truth = registry.get(name).topology
    pool = [_region_fixture(truth, region, seed) for seed, region in enumerate(REGIONS[name], start=1)]
    report = assemble(pool, truth)
    assert len(report.coverage_curve) == 3
    assert report.final_coverage == 100.0
    assert report.assembled.edges == truth.edges


def _random_pool(rng: random.Random, truth: CouplingGraph, size: int):
    edges = truth.sorted_edges()
    return [
        CouplingGraph(edges=rng.sample(edges, rng.randint(1, 6)), num_qubits=truth.num_qubits)
        for _ in range(size)
    ]


@pytest.mark.parametrize("seed", range(10))
def test_random_pool_curve_never_drops_and_ends_at_full_coverage(seed):
    rng = random.Random(seed)
    backend = CouplingGraph(edges=[(k, k + 1) for k in range(19)] + [(k, k + 5) for k in range(15)], num_qubits=20)
    pool = _random_pool(rng, backend, rng.randint(1, 40))
    union = CouplingGraph(edges=set().union(*(g.edges for g in pool)), num_qubits=20)
    curve = [pct for _, pct in assemble(pool, union).coverage_curve]
    assert len(curve) == len(pool)
    assert all(later >= earlier for earlier, later in zip(curve, curve[1:]))
    assert curve[-1] == 100.0


@pytest.mark.asyncio
async def test_assembling_180_circuits_is_fast():
    registry = await BackendRegistry.load("data/registries/ibm_style.json")
    truth = registry.get("cambridge").topology
    pool = _random_pool(random.Random(7), truth, 180)
    assert len(pool) == 180
    start = time.perf_counter()
    report = assemble(pool, truth, [f"c{k}.qasm" for k in range(180)])
    assert time.perf_counter() - start < 1.0
    assert len(report.coverage_curve) == 180


def test_loop_is_recovered_from_two_circuits():
    truth = CouplingGraph(edges=[(k, k + 1) for k in range(26)] + [(0, 26)], num_qubits=27)
    pool = [_region_fixture(truth, range(0, 15), 3), _region_fixture(truth, [0] + list(range(13, 27)), 4)]
    assert assemble(pool, truth).final_coverage == 100.0


def test_shuffle_pool_is_seeded():
    pool = list(range(10))
    assert shuffle_pool(pool, 3) == shuffle_pool(pool, 3)
    assert sorted(shuffle_pool(pool, 3)) == pool
    assert pool == list(range(10))


def test_average_coverage_curve():
    pool = [graph((0, 1)), graph((1, 2)), graph((2, 3)), graph((3, 4))]
    curve = average_coverage_curve(pool, TRUTH, pools=5, seed=1)
    assert curve == [(1, 25.0), (2, 50.0), (3, 75.0), (4, 100.0)]


def test_average_coverage_curve_needs_an_ordering():
    with pytest.raises(ValidationError):
        average_coverage_curve([graph((0, 1))], TRUTH, pools=0)


def test_coverage_curve_csv():
    assert coverage_curve_to_csv([(1, 50.0), (2, 100.0)]) == "circuits_used,coverage_percent\n1,50.0\n2,100.0\n"


def test_project_user_subgraph():
    derived = graph((0, 1), (1, 2), (4, 5), (5, 6))
    assert project_user_subgraph(derived, {0: 4, 1: 5, 2: 6, 3: 0}, [0, 1, 2]).edges == frozenset({(4, 5), (5, 6)})


def test_project_user_subgraph_missing_logical():
    with pytest.raises(LayoutError, match=r"\[7\]"):
        project_user_subgraph(graph((0, 1)), {0: 0}, [0, 7])
