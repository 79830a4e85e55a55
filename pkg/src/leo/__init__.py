"""Linking service for heterogeneous research-data systems."""

__version__ = "0.1.0"
