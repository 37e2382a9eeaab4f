"""Harmonic-number combinatorics and numerical verification of Euler-sum identities."""

__version__ = "0.1.0"
