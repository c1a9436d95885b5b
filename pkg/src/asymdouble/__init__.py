"""Dual principal graphs of asymptotic inclusions for SU(2)_k and SU(3)_k subfactors."""

__version__ = "0.1.0"
