"""Exact chamber, intersection and stability computations for weighted pointed rational curves."""

__version__ = "0.1.0"
