"""Maximal rank of planar singularity schemes of multiplicity two.

Staircase combinatorics, exact interpolation ranks over a prime field, and
a truncated-jet oracle for the underlying ideal-theoretic statements.
"""

__version__ = "0.1.0"
