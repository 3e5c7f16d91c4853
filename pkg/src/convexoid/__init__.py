"""Exact computations with multi-convexoid rings."""

__version__ = "0.1.0"
