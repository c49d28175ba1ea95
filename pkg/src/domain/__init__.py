"""Domain models for circuits, coupling graphs, SWAP events and backends."""
