"""Exact chain-level algebra for circle actions on Hochschild complexes."""

__version__ = "0.1.0"
