from src.application.synth_oracle.synthesizer import synthesize, synthesize_multi_tenant, write_fixture
from src.application.synth_oracle.topologies import build_topology, cover_regions, grow_region

__all__ = [
    "build_topology",
    "cover_regions",
    "grow_region",
    "synthesize",
    "synthesize_multi_tenant",
    "write_fixture",
]
