"""Exact rational elliptic-curve toolkit for Diophantine problems."""
from .curve import CurveQ, INF
from .exactnum import Fraction

__version__ = "0.1.0"
__all__ = ["CurveQ", "INF", "Fraction", "__version__"]
