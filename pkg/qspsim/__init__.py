"""Hamiltonian simulation by quantum signal processing, at dense-matrix level."""

__version__ = "0.1.0"
