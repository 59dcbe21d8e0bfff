"""Exact computations around small Kostka numbers, descent decompositions and parabolic complexes."""

__version__ = "0.1.0"
