"""Exact arithmetic for flat quadratic quasi-Frobenius Lie superalgebras."""

__version__ = "0.1.0"
