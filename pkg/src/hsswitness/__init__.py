"""Hilbert-Schmidt-speed witnesses of non-Markovian open-system dynamics."""

__version__ = "0.1.0"
