"""Colourings of integer, modular and rational lattices that avoid a
forbidden distance, together with verifiable certificates and lower bounds."""

__version__ = "0.1.0"
