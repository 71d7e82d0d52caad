"""Maximal Cohen-Macaulay categories as rings with several objects."""

__version__ = "0.1.0"
