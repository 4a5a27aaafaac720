"""Exact-arithmetic toolkit for monomorphism categories over discrete
valuation rings."""

from .errors import MonocatError
from .rings import RingCtx

__all__ = ["MonocatError", "RingCtx"]
