"""Finite-instance verification of an imprimitivity theorem for inverse semigroup crossed products."""

__version__ = "0.1.0"
