"""Exact computation of topological lower bounds for chromatic numbers."""

__version__ = "1.0.0"
