"""Combinatorial invariants of group-subgroup subfactors from permutation-group data."""

__version__ = "0.1.0"
