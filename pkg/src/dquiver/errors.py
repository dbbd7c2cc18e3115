"""Shared exception types."""


class BoundExceededError(RuntimeError):
    """An enumeration grew past its configured resource bound."""
