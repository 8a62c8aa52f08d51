"""Galois points of plane curves and the Galois groups of projections of their dual curves."""

__version__ = "0.1.0"
