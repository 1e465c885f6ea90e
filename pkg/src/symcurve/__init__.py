"""Combinatorial invariants of symmetric spatial curves and related polytope tools."""

__version__ = "0.1.0"
