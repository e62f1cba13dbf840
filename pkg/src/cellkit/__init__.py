"""Cellular approximation invariants of finite groups."""

__version__ = "0.1.0"
