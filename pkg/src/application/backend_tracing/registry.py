"""
Backend Registry for candidate backend topologies.
"""
import logging
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Union

from src.domain.backend.models import BackendRecord
from src.infrastructure.storage.file_storage import read_text
from src.infrastructure.storage.serializers import registry_from_json, registry_to_json
from src.shared.exceptions import RegistryError

logger = logging.getLogger(__name__)


class BackendRegistry:
    """
    Immutable collection of backend coupling maps, keyed by name.

    Iteration is in name order so results never depend on file order.
    """

    def __init__(self, records: Sequence[BackendRecord]):
        """
        Initialize the registry.

        Args:
            records: Backend records with unique names

        Raises:
            RegistryError: If the registry is empty or names repeat
        """
        if not records:
            raise RegistryError("registry contains no backends")
        backends: Dict[str, BackendRecord] = {}
        for record in records:
            if record.name in backends:
                raise RegistryError(f"duplicate backend name '{record.name}'")
            backends[record.name] = record
        self._backends = dict(sorted(backends.items()))

    @classmethod
    def from_json(cls, text: str) -> "BackendRegistry":
        return cls(registry_from_json(text))

    @classmethod
    async def load(cls, path: Union[str, Path]) -> "BackendRegistry":
        """
        Load a registry file.

        Args:
            path: JSON array of {"name", "num_qubits", "edges"}

        Returns:
            The loaded registry
        """
        registry = cls.from_json(await read_text(path))
        logger.info(f"Loaded {len(registry)} backend(s) from {path}: {', '.join(registry.names())}")
        return registry

    def get(self, name: str) -> Optional[BackendRecord]:
        return self._backends.get(name)

    def names(self) -> List[str]:
        return list(self._backends)

    def records(self) -> List[BackendRecord]:
        return list(self._backends.values())

    def to_json(self) -> str:
        return registry_to_json(self.records())

    def __iter__(self) -> Iterator[BackendRecord]:
        return iter(self._backends.values())

    def __len__(self) -> int:
        return len(self._backends)

    def __contains__(self, name: object) -> bool:
        return name in self._backends
