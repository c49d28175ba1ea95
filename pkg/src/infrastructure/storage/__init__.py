"""File storage and JSON serialization."""
