from src.application.backend_tracing.registry import BackendRegistry
from src.application.backend_tracing.tracer import trace, trace_pool

__all__ = ["BackendRegistry", "trace", "trace_pool"]
