"""
Shared fixtures.
"""
import pytest

from src.domain.circuit.models import ParsedCircuit
from src.domain.swap.models import RecognizerConfig
from src.infrastructure.qasm.parser import parse_qasm
from tests.helpers import FIXTURES, read_fixture


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def config() -> RecognizerConfig:
    return RecognizerConfig()


@pytest.fixture
def sample() -> ParsedCircuit:
    return parse_qasm(read_fixture("sample.qasm"), source_name="sample.qasm")
