"""Shared exception types."""


class CapExceeded(RuntimeError):
    """A requested computation exceeds the configured resource caps."""
