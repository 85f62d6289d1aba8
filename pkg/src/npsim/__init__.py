"""Verifier Turing machines simulated over lazily built computation graphs."""

__version__ = "0.1.0"
