"""Numerical side: special functions, finite-N densities, convergence studies."""
from .precision import PrecisionContext, PrecisionShortfall, default_context

__all__ = ["PrecisionContext", "PrecisionShortfall", "default_context"]
