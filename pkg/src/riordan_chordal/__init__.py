"""Exact power-series tools for Riordan matrices, G^k joins and the F-chordal problem."""

__version__ = "0.1.0"
