"""Exact orbit combinatorics for representations of Dynkin quivers."""

from .linalg import backend

__version__ = "0.1.0"
__all__ = ["backend", "__version__"]
