"""Vertex-transitive graphs of order 6p: constructions and Hamiltonicity certificates."""

__version__ = "0.1.0"
