"""Laplace-side recursion, saddle-point expansion and hypergeometric operator tables."""
