"""Exact convex-hull boundary computations for rational space curves."""

__version__ = "0.1.0"
