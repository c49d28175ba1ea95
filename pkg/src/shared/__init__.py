"""Shared utilities and common functionality."""
