"""Exact finite free convolutions of hypergeometric polynomials."""

__version__ = "0.1.0"
