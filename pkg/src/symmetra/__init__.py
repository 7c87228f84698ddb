"""Symmetric subsets of interval unions, B*[g] sets and kernel bounds."""

from ._backend import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
