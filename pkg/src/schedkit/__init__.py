"""Deterministic machine scheduling: exact, pseudopolynomial, approximation
and enumerative algorithms with a brute-force oracle layer."""

__version__ = "0.1.0"
