"""Finite permutation groups, normal coverings and diagonal-type machinery."""

__version__ = "0.1.0"
